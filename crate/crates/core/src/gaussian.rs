//! Gaussian input hypotheses and the lossy interferometer channel.
//!
//! States are zero-mean Gaussians carried entirely by their quadrature
//! covariance matrix in `xxpp` ordering (x_1..x_M, p_1..p_M), with the
//! internal convention hbar = 2 so the vacuum covariance is the identity.
//!
//! Two input families are built from the same squeezing parameters: single-
//! mode squeezed states (the ground truth, `Sque`) and squashed states (the
//! classical adversary, `Squa`) whose squeezed quadrature is pinned at the
//! vacuum level while the other carries excess noise 1 + 4n with
//! n = sinh^2 r. Pairs of adjacent modes are interfered on 50:50
//! beamsplitters and the result is pushed through the interferometer channel.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::{Result, C64};

/// Internal quadrature convention: vacuum variance 1 per quadrature.
pub const DEFAULT_HBAR: f64 = 2.0;

const SYMMETRY_TOL: f64 = 1e-12;
const UNCERTAINTY_TOL: f64 = 1e-10;
const SUBUNITARY_TOL: f64 = 1e-10;

/// Which input hypothesis a probability-bearing result refers to.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HypothesisKind {
    /// Squeezed-state ground truth.
    Sque,
    /// Squashed-state classical adversary.
    Squa,
}

impl std::fmt::Display for HypothesisKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            HypothesisKind::Sque => write!(f, "sque"),
            HypothesisKind::Squa => write!(f, "squa"),
        }
    }
}

/// Squeezing parameters, one nonnegative `r` per two-mode squeezer.
///
/// Internally each squeezer expands to a pair of oppositely oriented
/// single-mode states, so `K = 2 * r.len()` input modes. The signed
/// expansion puts the anti-squeezed quadrature on x for even modes
/// (0-based) and on p for odd modes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SqueezeSpec {
    r: Vec<f64>,
}

impl SqueezeSpec {
    pub fn new(r: Vec<f64>) -> Result<Self> {
        for (index, &value) in r.iter().enumerate() {
            if !value.is_finite() || value < 0.0 {
                return Err(Error::NegativeSqueezing { index, value });
            }
        }
        Ok(SqueezeSpec { r })
    }

    /// One entry per squeezer pair.
    pub fn pair_values(&self) -> &[f64] {
        &self.r
    }

    /// Number of expanded input modes, K = 2 * pairs.
    pub fn mode_count(&self) -> usize {
        2 * self.r.len()
    }

    /// Signed per-mode parameters: pair i expands to (+r_i, -r_i).
    /// A mode with signed parameter rho has x-variance e^{+2 rho} and
    /// p-variance e^{-2 rho} (in units of hbar/2).
    pub fn signed_params(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.mode_count());
        for &r in &self.r {
            out.push(r);
            out.push(-r);
        }
        out
    }

    /// Per-mode mean photon numbers n = sinh^2 r.
    pub fn mean_photons(&self) -> Vec<f64> {
        self.signed_params().iter().map(|r| r.sinh().powi(2)).collect()
    }
}

/// Quadrature covariance matrix in `xxpp` ordering.
#[derive(Clone, Debug)]
pub struct CovarianceMatrix {
    mat: DMatrix<f64>,
    modes: usize,
    hbar: f64,
}

impl CovarianceMatrix {
    /// Validates symmetry, positive definiteness and the uncertainty bound
    /// before wrapping.
    pub fn try_new(mat: DMatrix<f64>, hbar: f64) -> Result<Self> {
        if mat.nrows() != mat.ncols() || mat.nrows() % 2 != 0 {
            return Err(Error::DimensionMismatch {
                what: "covariance matrix (2M x 2M)",
                expected: mat.nrows(),
                actual: mat.ncols(),
            });
        }
        let modes = mat.nrows() / 2;
        let cov = CovarianceMatrix { mat, modes, hbar };
        cov.validate()?;
        Ok(cov)
    }

    /// Wraps without validation; for outputs of operations that preserve
    /// validity by construction (mode reduction, basis permutation).
    fn trusted(mat: DMatrix<f64>, modes: usize, hbar: f64) -> Self {
        CovarianceMatrix { mat, modes, hbar }
    }

    pub fn vacuum(modes: usize, hbar: f64) -> Self {
        CovarianceMatrix::trusted(
            DMatrix::identity(2 * modes, 2 * modes) * (hbar / 2.0),
            modes,
            hbar,
        )
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.mat
    }

    pub fn mode_count(&self) -> usize {
        self.modes
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    fn validate(&self) -> Result<()> {
        let n = self.mat.nrows();
        let mut max_abs = 0f64;
        let mut max_asym = 0f64;
        for i in 0..n {
            for j in 0..n {
                max_abs = max_abs.max(self.mat[(i, j)].abs());
                max_asym = max_asym.max((self.mat[(i, j)] - self.mat[(j, i)]).abs());
            }
        }
        let rel = max_asym / max_abs.max(1.0);
        if rel > SYMMETRY_TOL {
            return Err(Error::NotSymmetric(rel));
        }
        if nalgebra::Cholesky::new(self.mat.clone()).is_none() {
            return Err(Error::NotPositiveDefinite);
        }
        let min_eig = self.uncertainty_min_eigenvalue();
        if min_eig < -UNCERTAINTY_TOL {
            return Err(Error::UncertaintyViolation(min_eig));
        }
        Ok(())
    }

    /// Minimum eigenvalue of sigma + i (hbar/2) Omega, computed through the
    /// real symmetric embedding [[S, -K], [K, S]] of the Hermitian form.
    pub fn uncertainty_min_eigenvalue(&self) -> f64 {
        let n = self.mat.nrows();
        let m = self.modes;
        // K = (hbar/2) Omega with Omega = [[0, I], [-I, 0]] in xxpp ordering.
        let mut embed = DMatrix::<f64>::zeros(2 * n, 2 * n);
        embed.view_mut((0, 0), (n, n)).copy_from(&self.mat);
        embed.view_mut((n, n), (n, n)).copy_from(&self.mat);
        let half = self.hbar / 2.0;
        for i in 0..m {
            // -K block (top right) and K block (bottom left).
            embed[(i, n + m + i)] = -half;
            embed[(m + i, n + i)] = half;
            embed[(n + i, m + i)] = half;
            embed[(n + m + i, i)] = -half;
        }
        SymmetricEigen::new(embed)
            .eigenvalues
            .iter()
            .cloned()
            .fold(f64::INFINITY, f64::min)
    }

    /// Minimum eigenvalue of sigma - (hbar/2) I, the separability witness.
    pub fn classicality_min_eigenvalue(&self) -> f64 {
        let mut shifted = self.mat.clone();
        let half = self.hbar / 2.0;
        for i in 0..shifted.nrows() {
            shifted[(i, i)] -= half;
        }
        SymmetricEigen::new(shifted)
            .eigenvalues
            .iter()
            .cloned()
            .fold(f64::INFINITY, f64::min)
    }

    /// Keeps the x and p rows/columns of the listed modes, in list order.
    pub fn reduce(&self, modes: &[usize]) -> Result<CovarianceMatrix> {
        let m = self.modes;
        let mut seen = vec![false; m];
        for &i in modes {
            if i >= m {
                return Err(Error::ModeIndexOutOfRange { index: i, modes: m });
            }
            if seen[i] {
                return Err(Error::DuplicateModeIndex(i));
            }
            seen[i] = true;
        }
        let k = modes.len();
        let mut out = DMatrix::<f64>::zeros(2 * k, 2 * k);
        for (a, &i) in modes.iter().enumerate() {
            for (b, &j) in modes.iter().enumerate() {
                out[(a, b)] = self.mat[(i, j)];
                out[(a, k + b)] = self.mat[(i, m + j)];
                out[(k + a, b)] = self.mat[(m + i, j)];
                out[(k + a, k + b)] = self.mat[(m + i, m + j)];
            }
        }
        Ok(CovarianceMatrix::trusted(out, k, self.hbar))
    }
}

/// Complex M x K sub-unitary transfer matrix of the lossy interferometer.
#[derive(Clone, Debug)]
pub struct TransmissionMatrix {
    mat: DMatrix<C64>,
}

impl TransmissionMatrix {
    /// Validates finiteness and sub-unitarity (singular values <= 1 up to
    /// round-off tolerance; larger violations are hard errors).
    pub fn try_new(mat: DMatrix<C64>) -> Result<Self> {
        for z in mat.iter() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::InvalidInput(
                    "transmission matrix has non-finite entries".into(),
                ));
            }
        }
        let t = TransmissionMatrix { mat };
        let s_max = t.max_singular_value();
        if s_max > 1.0 + SUBUNITARY_TOL {
            return Err(Error::NonPhysicalTransmission(s_max));
        }
        Ok(t)
    }

    pub fn identity(n: usize) -> Self {
        TransmissionMatrix {
            mat: DMatrix::identity(n, n),
        }
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.mat
    }

    pub fn output_modes(&self) -> usize {
        self.mat.nrows()
    }

    pub fn input_modes(&self) -> usize {
        self.mat.ncols()
    }

    /// Largest singular value, via the Hermitian eigenproblem of T^dag T.
    pub fn max_singular_value(&self) -> f64 {
        let gram = self.mat.adjoint() * &self.mat;
        hermitian_eigenvalues(&gram)
            .into_iter()
            .fold(0f64, f64::max)
            .max(0.0)
            .sqrt()
    }

    /// The 2M x 2K real quadrature action [[Re T, -Im T], [Im T, Re T]].
    pub fn v_matrix(&self) -> DMatrix<f64> {
        let (m, k) = (self.mat.nrows(), self.mat.ncols());
        let mut v = DMatrix::<f64>::zeros(2 * m, 2 * k);
        for i in 0..m {
            for j in 0..k {
                let z = self.mat[(i, j)];
                v[(i, j)] = z.re;
                v[(i, k + j)] = -z.im;
                v[(m + i, j)] = z.im;
                v[(m + i, k + j)] = z.re;
            }
        }
        v
    }
}

/// Eigenvalues of a Hermitian complex matrix through the real symmetric
/// embedding [[Re, -Im], [Im, Re]] (each eigenvalue appears twice).
pub fn hermitian_eigenvalues(mat: &DMatrix<C64>) -> Vec<f64> {
    let n = mat.nrows();
    let mut embed = DMatrix::<f64>::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            let z = mat[(i, j)];
            embed[(i, j)] = z.re;
            embed[(n + i, n + j)] = z.re;
            embed[(i, n + j)] = -z.im;
            embed[(n + i, j)] = z.im;
        }
    }
    let eig = SymmetricEigen::new(embed);
    let mut vals: Vec<f64> = eig.eigenvalues.iter().cloned().collect();
    vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
    // Keep one copy of each doubled eigenvalue.
    vals.into_iter().step_by(2).collect()
}

/// Covariance of K single-mode squeezed states in the alternating
/// orientation: even modes (0-based) anti-squeezed along x, odd along p.
pub fn smss_covariance(spec: &SqueezeSpec) -> CovarianceMatrix {
    smss_covariance_with_hbar(spec, DEFAULT_HBAR)
}

pub fn smss_covariance_with_hbar(spec: &SqueezeSpec, hbar: f64) -> CovarianceMatrix {
    let k = spec.mode_count();
    let mut mat = DMatrix::<f64>::zeros(2 * k, 2 * k);
    let half = hbar / 2.0;
    for (j, rho) in spec.signed_params().into_iter().enumerate() {
        mat[(j, j)] = half * (2.0 * rho).exp();
        mat[(k + j, k + j)] = half * (-2.0 * rho).exp();
    }
    CovarianceMatrix::trusted(mat, k, hbar)
}

/// Covariance of K single-mode squashed states: each e^{-2r} variance of the
/// squeezed family is replaced by 1 and each e^{+2r} by 1 + 4n, n = sinh^2 r.
pub fn squashed_covariance(spec: &SqueezeSpec) -> CovarianceMatrix {
    squashed_covariance_with_hbar(spec, DEFAULT_HBAR)
}

pub fn squashed_covariance_with_hbar(spec: &SqueezeSpec, hbar: f64) -> CovarianceMatrix {
    let k = spec.mode_count();
    let mut mat = DMatrix::<f64>::zeros(2 * k, 2 * k);
    let half = hbar / 2.0;
    for (j, rho) in spec.signed_params().into_iter().enumerate() {
        let excess = 1.0 + 4.0 * rho.sinh().powi(2);
        let (x_var, p_var) = if rho >= 0.0 { (excess, 1.0) } else { (1.0, excess) };
        mat[(j, j)] = half * x_var;
        mat[(k + j, k + j)] = half * p_var;
    }
    CovarianceMatrix::trusted(mat, k, hbar)
}

/// Orthogonal 2K x 2K quadrature action of K/2 pairwise 50:50 beamsplitters,
/// each interfering modes (2i, 2i+1) identically on the x and p blocks.
pub fn pairwise_beamsplitter(modes: usize) -> Result<DMatrix<f64>> {
    if modes % 2 != 0 {
        return Err(Error::OddModeCount(modes));
    }
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut b = DMatrix::<f64>::zeros(2 * modes, 2 * modes);
    for block in [0, modes] {
        for pair in 0..modes / 2 {
            let a = block + 2 * pair;
            b[(a, a)] = h;
            b[(a, a + 1)] = -h;
            b[(a + 1, a)] = h;
            b[(a + 1, a + 1)] = h;
        }
    }
    Ok(b)
}

/// Mode-space (K x K) matrix of the same beamsplitter layer; real, so it acts
/// identically on annihilation operators and on the x/p quadrature blocks.
pub fn pairwise_beamsplitter_modes(modes: usize) -> Result<DMatrix<C64>> {
    if modes % 2 != 0 {
        return Err(Error::OddModeCount(modes));
    }
    let h = Complex::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let mut b = DMatrix::<C64>::zeros(modes, modes);
    for pair in 0..modes / 2 {
        let a = 2 * pair;
        b[(a, a)] = h;
        b[(a, a + 1)] = -h;
        b[(a + 1, a)] = h;
        b[(a + 1, a + 1)] = h;
    }
    Ok(b)
}

/// Pushes a covariance through the interferometer channel:
/// sigma_out = (hbar/2)(I - V V^T) + V sigma_in V^T.
pub fn apply_channel(t: &TransmissionMatrix, sigma: &CovarianceMatrix) -> Result<CovarianceMatrix> {
    if t.input_modes() != sigma.mode_count() {
        return Err(Error::DimensionMismatch {
            what: "transmission columns vs covariance modes",
            expected: sigma.mode_count(),
            actual: t.input_modes(),
        });
    }
    let v = t.v_matrix();
    let m2 = 2 * t.output_modes();
    let half = sigma.hbar() / 2.0;
    let mut out = DMatrix::<f64>::identity(m2, m2) * half;
    out -= &v * v.transpose() * half;
    out += &v * sigma.matrix() * v.transpose();
    // Symmetrize round-off before validating.
    let sym = (&out + out.transpose()) * 0.5;
    CovarianceMatrix::try_new(sym, sigma.hbar())
}

/// Builds the output covariance of one hypothesis: single-mode inputs,
/// pairwise beamsplitters, then the lossy channel.
pub fn build_hypothesis(
    kind: HypothesisKind,
    spec: &SqueezeSpec,
    t: &TransmissionMatrix,
) -> Result<CovarianceMatrix> {
    build_hypothesis_with_hbar(kind, spec, t, DEFAULT_HBAR)
}

pub fn build_hypothesis_with_hbar(
    kind: HypothesisKind,
    spec: &SqueezeSpec,
    t: &TransmissionMatrix,
    hbar: f64,
) -> Result<CovarianceMatrix> {
    let k = spec.mode_count();
    if t.input_modes() != k {
        return Err(Error::DimensionMismatch {
            what: "transmission columns vs expanded squeezers",
            expected: k,
            actual: t.input_modes(),
        });
    }
    let single = match kind {
        HypothesisKind::Sque => smss_covariance_with_hbar(spec, hbar),
        HypothesisKind::Squa => squashed_covariance_with_hbar(spec, hbar),
    };
    let b = pairwise_beamsplitter(k)?;
    let paired = &b * single.matrix() * b.transpose();
    let input = CovarianceMatrix::try_new(paired, hbar)?;
    apply_channel(t, &input)
}

/// Total mean photon number of the state.
pub fn mean_photon_number(sigma: &CovarianceMatrix) -> f64 {
    let m = sigma.mode_count();
    let hbar = sigma.hbar();
    (0..m)
        .map(|i| (sigma.matrix()[(i, i)] + sigma.matrix()[(m + i, m + i)]) / (2.0 * hbar) - 0.5)
        .sum()
}

/// Photon number density: mean photons per output mode.
pub fn photon_density(sigma: &CovarianceMatrix) -> f64 {
    mean_photon_number(sigma) / sigma.mode_count() as f64
}

/// Relative deviation from the click/photon relation
/// 1/C_mean = 1/N_mean + 1/M, reported as |1/C - (1/N + 1/M)| * C.
/// Diagnostic only: the relation is not exact per instance.
pub fn click_photon_relation_check(sigma: &CovarianceMatrix, mean_clicks: f64) -> Result<f64> {
    if mean_clicks == 0.0 {
        return Err(Error::ZeroMeanClicks);
    }
    let n_mean = mean_photon_number(sigma);
    let m = sigma.mode_count() as f64;
    Ok((1.0 / mean_clicks - (1.0 / n_mean + 1.0 / m)).abs() * mean_clicks)
}

/// Haar-random n x n unitary via QR of a complex Ginibre matrix with the
/// usual phase fix on the R diagonal.
pub fn haar_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DMatrix<C64> {
    let ginibre = DMatrix::from_fn(n, n, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
    });
    let qr = ginibre.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() == 0.0 { Complex::new(1.0, 0.0) } else { d / d.norm() };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Converts a 2M x 2M matrix from xpxp to xxpp ordering (I/O boundary only).
pub fn xxpp_from_xpxp(mat: &DMatrix<f64>) -> DMatrix<f64> {
    let n = mat.nrows();
    let m = n / 2;
    let perm = |idx: usize| -> usize {
        // xpxp index 2k -> xxpp index k; 2k+1 -> M + k.
        if idx % 2 == 0 { idx / 2 } else { m + idx / 2 }
    };
    let mut out = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            out[(perm(i), perm(j))] = mat[(i, j)];
        }
    }
    out
}

/// Converts a 2M x 2M matrix from xxpp to xpxp ordering (I/O boundary only).
pub fn xpxp_from_xxpp(mat: &DMatrix<f64>) -> DMatrix<f64> {
    let n = mat.nrows();
    let m = n / 2;
    let perm = |idx: usize| -> usize { if idx < m { 2 * idx } else { 2 * (idx - m) + 1 } };
    let mut out = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            out[(perm(i), perm(j))] = mat[(i, j)];
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;

    fn spec(r: &[f64]) -> SqueezeSpec {
        SqueezeSpec::new(r.to_vec()).unwrap()
    }

    #[test]
    fn rejects_negative_squeezing() {
        assert!(matches!(
            SqueezeSpec::new(vec![0.5, -0.1]),
            Err(Error::NegativeSqueezing { index: 1, .. })
        ));
    }

    #[test]
    fn smss_vacuum_is_identity() {
        let cov = smss_covariance(&spec(&[0.0]));
        assert_eq!(cov.mode_count(), 2);
        assert_abs_diff_eq!(
            cov.matrix(),
            &DMatrix::<f64>::identity(4, 4),
            epsilon = 1e-15
        );
    }

    #[test]
    fn smss_ln2_alternation_matches_print() {
        // e^{+-2 ln 2} = 4, 1/4; even mode anti-squeezed in x.
        let cov = smss_covariance(&spec(&[std::f64::consts::LN_2]));
        let m = cov.matrix();
        assert_abs_diff_eq!(m[(0, 0)], 4.0, epsilon = 1e-12);
        assert_abs_diff_eq!(m[(1, 1)], 0.25, epsilon = 1e-12);
        assert_abs_diff_eq!(m[(2, 2)], 0.25, epsilon = 1e-12);
        assert_abs_diff_eq!(m[(3, 3)], 4.0, epsilon = 1e-12);
    }

    #[test]
    fn smss_saturates_uncertainty() {
        let cov = smss_covariance(&spec(&[0.3, 1.7]));
        let m = cov.matrix();
        let k = cov.mode_count();
        for j in 0..k {
            assert_abs_diff_eq!(m[(j, j)] * m[(k + j, k + j)], 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn squashed_has_vacuum_floor_and_excess() {
        let r = (0.5f64).sqrt().asinh(); // n = 0.5
        let cov = squashed_covariance(&spec(&[r]));
        let m = cov.matrix();
        let k = cov.mode_count();
        let mut min_var = f64::INFINITY;
        for j in 0..k {
            min_var = min_var.min(m[(j, j)]).min(m[(k + j, k + j)]);
        }
        assert_eq!(min_var, 1.0);
        assert_abs_diff_eq!(m[(0, 0)], 3.0, epsilon = 1e-12); // 1 + 4*0.5
        assert_abs_diff_eq!(m[(k, k)], 1.0, epsilon = 1e-15);
    }

    #[test]
    fn squashed_at_zero_squeezing_is_vacuum() {
        let cov = squashed_covariance(&spec(&[0.0, 0.0]));
        assert_abs_diff_eq!(
            cov.matrix(),
            &DMatrix::<f64>::identity(8, 8),
            epsilon = 1e-15
        );
    }

    #[test]
    fn beamsplitter_is_orthogonal() {
        let b = pairwise_beamsplitter(6).unwrap();
        let prod = &b * b.transpose();
        assert_abs_diff_eq!(prod, DMatrix::<f64>::identity(12, 12), epsilon = 1e-14);
        assert!(pairwise_beamsplitter(3).is_err());
    }

    #[test]
    fn beamsplitter_conjugation_gives_two_mode_squeezing() {
        // Direct matrix-multiplication oracle for the paired-state covariance:
        // x block [[cosh 2r, sinh 2r], ...], p block with the opposite sign.
        let r = 0.8f64;
        let cov = smss_covariance(&spec(&[r]));
        let b = pairwise_beamsplitter(2).unwrap();
        let paired = &b * cov.matrix() * b.transpose();
        let (c, s) = ((2.0 * r).cosh(), (2.0 * r).sinh());
        let expected = DMatrix::from_row_slice(
            4,
            4,
            &[
                c, s, 0.0, 0.0, //
                s, c, 0.0, 0.0, //
                0.0, 0.0, c, -s, //
                0.0, 0.0, -s, c,
            ],
        );
        assert_abs_diff_eq!(paired, expected, epsilon = 1e-12);
    }

    #[test]
    fn identity_channel_is_identity_map() {
        let cov = build_hypothesis(
            HypothesisKind::Sque,
            &spec(&[0.4, 0.9]),
            &TransmissionMatrix::identity(4),
        )
        .unwrap();
        let b = pairwise_beamsplitter(4).unwrap();
        let direct = &b * smss_covariance(&spec(&[0.4, 0.9])).matrix() * b.transpose();
        assert_abs_diff_eq!(cov.matrix(), &direct, epsilon = 1e-14);
    }

    #[test]
    fn uniform_loss_on_single_mode() {
        let eta = 0.37;
        let t = TransmissionMatrix::try_new(DMatrix::from_element(
            1,
            1,
            Complex::new(eta.sqrt(), 0.0),
        ))
        .unwrap();
        let mut mat = DMatrix::<f64>::identity(2, 2);
        mat[(0, 0)] = 5.0;
        mat[(1, 1)] = 0.2;
        let sigma = CovarianceMatrix::try_new(mat.clone(), DEFAULT_HBAR).unwrap();
        let out = apply_channel(&t, &sigma).unwrap();
        let expected = DMatrix::<f64>::identity(2, 2) * (1.0 - eta) + mat * eta;
        assert_abs_diff_eq!(out.matrix(), &expected, epsilon = 1e-14);

        // Vacuum is a fixed point of loss.
        let vac = CovarianceMatrix::vacuum(1, DEFAULT_HBAR);
        let out = apply_channel(&t, &vac).unwrap();
        assert_abs_diff_eq!(out.matrix(), &DMatrix::<f64>::identity(2, 2), epsilon = 1e-14);
    }

    #[test]
    fn non_physical_transmission_rejected() {
        let t = TransmissionMatrix::try_new(DMatrix::from_element(1, 1, Complex::new(1.2, 0.0)));
        assert!(matches!(t, Err(Error::NonPhysicalTransmission(_))));
    }

    #[test]
    fn squashed_hypothesis_is_classical_and_squeezed_is_not() {
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(11);
        let u = haar_unitary(4, &mut rng);
        let t = TransmissionMatrix::try_new(u.map(|z| z * 0.8)).unwrap();
        let sp = spec(&[0.6, 1.1]);

        let squa = build_hypothesis(HypothesisKind::Squa, &sp, &t).unwrap();
        assert!(squa.classicality_min_eigenvalue() >= -1e-10);

        let lossless = TransmissionMatrix::try_new(haar_unitary(4, &mut rng)).unwrap();
        let sque = build_hypothesis(HypothesisKind::Sque, &sp, &lossless).unwrap();
        assert!(sque.classicality_min_eigenvalue() < 0.0);
    }

    #[test]
    fn hypotheses_coincide_at_zero_squeezing() {
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(3);
        let t = TransmissionMatrix::try_new(haar_unitary(2, &mut rng).map(|z| z * 0.9)).unwrap();
        let sp = spec(&[0.0]);
        let a = build_hypothesis(HypothesisKind::Sque, &sp, &t).unwrap();
        let b = build_hypothesis(HypothesisKind::Squa, &sp, &t).unwrap();
        assert_abs_diff_eq!(a.matrix(), b.matrix(), epsilon = 1e-14);
        assert_abs_diff_eq!(
            a.matrix(),
            &DMatrix::<f64>::identity(4, 4),
            epsilon = 1e-12
        );
    }

    #[test]
    fn photon_numbers() {
        assert_eq!(mean_photon_number(&CovarianceMatrix::vacuum(3, 2.0)), 0.0);

        let single = smss_covariance(&spec(&[1.0]));
        let reduced = single.reduce(&[0]).unwrap();
        assert_abs_diff_eq!(
            mean_photon_number(&reduced),
            1.0f64.sinh().powi(2),
            epsilon = 1e-12
        );

        // Squashed mode built from the same r carries the same n.
        let squa = squashed_covariance(&spec(&[1.0])).reduce(&[0]).unwrap();
        assert_abs_diff_eq!(
            mean_photon_number(&squa),
            1.0f64.sinh().powi(2),
            epsilon = 1e-12
        );
    }

    #[test]
    fn photon_number_invariant_under_unitary_channel() {
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(5);
        let sp = spec(&[0.5, 1.2]);
        let before = build_hypothesis(
            HypothesisKind::Sque,
            &sp,
            &TransmissionMatrix::identity(4),
        )
        .unwrap();
        let u = TransmissionMatrix::try_new(haar_unitary(4, &mut rng)).unwrap();
        let after = apply_channel(&u, &before).unwrap();
        let (n0, n1) = (mean_photon_number(&before), mean_photon_number(&after));
        assert!((n0 - n1).abs() / n0 < 1e-10);
    }

    #[test]
    fn hbar_one_convention_round_trips() {
        let sp = spec(&[0.7]);
        let cov = smss_covariance_with_hbar(&sp, 1.0);
        assert_abs_diff_eq!(cov.matrix()[(0, 0)], 0.5 * (1.4f64).exp(), epsilon = 1e-12);
        assert_abs_diff_eq!(
            mean_photon_number(&cov.reduce(&[0]).unwrap()),
            0.7f64.sinh().powi(2),
            epsilon = 1e-12
        );
    }

    #[test]
    fn ordering_converters_invert_each_other() {
        let mat = DMatrix::from_fn(6, 6, |i, j| (i * 6 + j) as f64);
        let sym = (&mat + mat.transpose()) * 0.5;
        let there = xpxp_from_xxpp(&sym);
        let back = xxpp_from_xpxp(&there);
        assert_abs_diff_eq!(back, sym, epsilon = 0.0);
    }

    #[test]
    fn haar_unitary_is_unitary() {
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(9);
        let u = haar_unitary(5, &mut rng);
        let prod = u.adjoint() * &u;
        for i in 0..5 {
            for j in 0..5 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(prod[(i, j)].re, expect, epsilon = 1e-12);
                assert_abs_diff_eq!(prod[(i, j)].im, 0.0, epsilon = 1e-12);
            }
        }
    }
}
