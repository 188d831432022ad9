//! Quantities read off a stationary state, and the closed-form entanglement
//! threshold they are compared with.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::density::DensityMatrix;
use super::hilbert::{c, CMatrix, HilbertSpec, SiteKind};
use super::liouvillian::{build_local_liouvillian, Liouvillian};
use super::steady::steady_state;
use crate::error::{Error, Result};
use crate::local::{contrast, Bridge};
use crate::model::{coth_half, occupation, rates, ModelParams, Side, Statistics};

/// Relative heat-balance tolerance `|Q_L + Q_R| ≤ tol · max|Q|`.
pub const BALANCE_TOL: f64 = 1e-10;
/// Off-X entries below this magnitude select the X-state concurrence.
pub const X_STATE_TOL: f64 = 1e-10;

/// Heat flowing from each bath into the system, `Q_λ = tr{H D_λ(ρ)}` with
/// the generator's heat Hamiltonian. Checks the stationary balance.
pub fn heat_flows(rho: &DensityMatrix, liouvillian: &Liouvillian) -> Result<(f64, f64)> {
    if rho.dim() != liouvillian.dim() {
        return Err(Error::DimensionMismatch {
            expected: liouvillian.dim(),
            got: rho.dim(),
        });
    }
    let h = liouvillian.heat_hamiltonian();
    let q = |side| (h * liouvillian.dissipate(side, rho.matrix())).trace().re;
    let (ql, qr) = (q(Side::Left), q(Side::Right));
    // the absolute floor covers states with no current at all
    let allowed = BALANCE_TOL * ql.abs().max(qr.abs()) + balance_floor(liouvillian);
    let imbalance = (ql + qr).abs();
    if imbalance > allowed {
        return Err(Error::NotStationary { imbalance });
    }
    Ok((ql, qr))
}

/// Round-off scale of a single heat flow: machine epsilon times the size of
/// the dissipators and the heat Hamiltonian.
fn balance_floor(liouvillian: &Liouvillian) -> f64 {
    let rate: f64 = [Side::Left, Side::Right]
        .iter()
        .flat_map(|&s| liouvillian.channels(s))
        .map(|ch| ch.rate * ch.op.norm_squared())
        .sum();
    64.0 * f64::EPSILON * rate * liouvillian.heat_hamiltonian().norm()
}

/// Heat entering from `side`.
pub fn heat_current_numeric(
    rho: &DensityMatrix,
    liouvillian: &Liouvillian,
    side: Side,
) -> Result<f64> {
    let (ql, qr) = heat_flows(rho, liouvillian)?;
    Ok(match side {
        Side::Left => ql,
        Side::Right => qr,
    })
}

/// Net current `J = Q_L − Q_R`.
pub fn current(rho: &DensityMatrix, liouvillian: &Liouvillian) -> Result<f64> {
    let (ql, qr) = heat_flows(rho, liouvillian)?;
    Ok(ql - qr)
}

/// Steady state of `liouvillian` and its current.
pub fn solve_current(liouvillian: &Liouvillian) -> Result<(DensityMatrix, f64)> {
    let rho = steady_state(liouvillian)?;
    let j = current(&rho, liouvillian)?;
    Ok((rho, j))
}

fn two_site_spec(rho: &DensityMatrix) -> Result<HilbertSpec> {
    let d = rho.dim();
    let k = (d as f64).sqrt().round() as usize;
    if k * k != d || k < 2 {
        return Err(Error::DimensionMismatch {
            expected: k.max(2) * k.max(2),
            got: d,
        });
    }
    Ok(match k {
        2 => HilbertSpec::qubits(2),
        _ => HilbertSpec::oscillators(2, k),
    })
}

/// `⟨s₁ s₂†⟩`.
pub fn hopping_expectation(rho: &DensityMatrix) -> Result<Complex64> {
    let spec = two_site_spec(rho)?;
    Ok(rho.expect(&(spec.lowering(0) * spec.lowering(1).adjoint())))
}

/// Coherence `⟨s₁s₂† − s₁†s₂⟩ / 2` of a two-site state.
pub fn coherence(rho: &DensityMatrix) -> Result<Complex64> {
    let spec = two_site_spec(rho)?;
    let s1 = spec.lowering(0);
    let s2 = spec.lowering(1);
    let op = (&s1 * s2.adjoint() - s1.adjoint() * &s2) * c(0.5);
    Ok(rho.expect(&op))
}

fn require_two_qubits(rho: &DensityMatrix) -> Result<()> {
    if rho.dim() == 4 {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected: 4,
            got: rho.dim(),
        })
    }
}

/// `[p₁, p₂, p₃, p₄]`: populations of |11⟩, |01⟩, |10⟩, |00⟩.
pub fn populations(rho: &DensityMatrix) -> Result<[f64; 4]> {
    require_two_qubits(rho)?;
    let m = rho.matrix();
    Ok([m[(3, 3)].re, m[(1, 1)].re, m[(2, 2)].re, m[(0, 0)].re])
}

/// Whether every entry outside the diagonal and anti-diagonal is negligible.
pub fn is_x_state(rho: &DensityMatrix) -> Result<bool> {
    require_two_qubits(rho)?;
    let m = rho.matrix();
    Ok((0..4).all(|i| (0..4).all(|j| i == j || i + j == 3 || m[(i, j)].norm() < X_STATE_TOL)))
}

/// Concurrence of an X-shaped two-qubit state.
pub fn concurrence_x(rho: &DensityMatrix) -> Result<f64> {
    require_two_qubits(rho)?;
    let m = rho.matrix();
    let p = |k: usize| m[(k, k)].re.max(0.0);
    let a = m[(1, 2)].norm() - (p(0) * p(3)).sqrt();
    let b = m[(0, 3)].norm() - (p(1) * p(2)).sqrt();
    Ok((2.0 * a.max(b)).clamp(0.0, 1.0))
}

/// Concurrence from the spectrum of `ρ (σ_y⊗σ_y) ρ* (σ_y⊗σ_y)`.
///
/// The square roots of that spectrum are the singular values of
/// `√ρ (σ_y⊗σ_y) √ρ*`.
pub fn concurrence_general(rho: &DensityMatrix) -> Result<f64> {
    require_two_qubits(rho)?;
    let mut yy = CMatrix::zeros(4, 4);
    // σ_y⊗σ_y = antidiag(−1, 1, 1, −1)
    for (i, s) in [-1.0, 1.0, 1.0, -1.0].iter().enumerate() {
        yy[(i, 3 - i)] = c(*s);
    }
    let root = rho.sqrt();
    let a = &root * yy * root.map(|z| z.conj());
    let mut lambda: Vec<f64> = a.singular_values().iter().copied().collect();
    lambda.sort_by(|x, y| y.total_cmp(x));
    Ok((lambda[0] - lambda[1] - lambda[2] - lambda[3]).clamp(0.0, 1.0))
}

/// Concurrence, through the X-state formula when it applies.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    if is_x_state(rho)? {
        concurrence_x(rho)
    } else {
        concurrence_general(rho)
    }
}

/// Closed-form steady-state populations `(p₁, p₄)` of the doubly excited and
/// ground states of two qubits.
pub fn closed_form_populations(params: &ModelParams) -> Result<(f64, f64)> {
    params.validate()?;
    let r = rates(params)?;
    let g2 = 4.0 * params.g * params.g;
    let (lp, lm, rp, rm) = (
        r.gamma_plus_left,
        r.gamma_minus_left,
        r.gamma_plus_right,
        r.gamma_minus_right,
    );
    let big = r.big_gamma;
    let den = (g2 + r.big_gamma_left * r.big_gamma_right) * big * big;
    let p1 = (g2 * (lp + rp).powi(2) + lp * rp * big * big) / den;
    let p4 = (g2 * (lm + rm).powi(2) + lm * rm * big * big) / den;
    Ok((p1, p4))
}

/// Entanglement threshold `J_c = 4gω√(p₁p₄)` of two qubits.
pub fn critical_current(params: &ModelParams) -> Result<f64> {
    let (p1, p4) = closed_form_populations(params)?;
    Ok(4.0 * params.g * params.omega * (p1 * p4).sqrt())
}

/// `J_c` in its expanded single-square-root form.
pub fn critical_current_expanded(params: &ModelParams) -> Result<f64> {
    params.validate()?;
    let r = rates(params)?;
    let g = params.g;
    let g2 = 4.0 * g * g;
    let (lp, lm, rp, rm) = (
        r.gamma_plus_left,
        r.gamma_minus_left,
        r.gamma_plus_right,
        r.gamma_minus_right,
    );
    let big = r.big_gamma;
    let chi = (g2 + r.big_gamma_left * r.big_gamma_right) * big * big;
    let sp = lp + rp;
    let sm = lm + rm;
    let mut inner = g2 * sp * sp * sm * sm + big * big * (lm * rm * sp * sp + lp * rp * sm * sm);
    if g != 0.0 {
        inner += lp * lm * rp * rm * big.powi(4) / (4.0 * g * g);
    }
    Ok(8.0 * g * g * params.omega / chi * inner.sqrt())
}

/// `J_c` for equal couplings and a cold bath at T = 0, written with the
/// hot-bath occupation.
pub fn critical_current_symmetric(params: &ModelParams) -> Result<f64> {
    params.validate()?;
    params.require_bosonic_qubit("symmetric critical current")?;
    if params.gamma_left != params.gamma_right || params.t_right != 0.0 {
        return Err(Error::Domain(
            "symmetric critical current needs gamma_left = gamma_right and t_right = 0".into(),
        ));
    }
    let n = occupation(Statistics::Bosonic, params.omega, params.t_left)?;
    let ch = coth_half(params.omega, params.t_left);
    let gamma = params.gamma_left;
    let alpha1 = crate::local::alpha_limits(params)?.alpha_1;
    let g2 = 4.0 * params.g * params.g;
    let root = (g2 * (2.0 + n).powi(2) + gamma * gamma * (ch + 1.0).powi(2) * (1.0 + n)).sqrt();
    Ok(2.0 * n * params.omega * alpha1 * root / (ch + 1.0).powi(2))
}

fn inverse_temperature(t: f64) -> Result<f64> {
    if t > 0.0 && t.is_finite() {
        Ok(1.0 / t)
    } else {
        Err(Error::Domain(format!(
            "entropy production needs T > 0, got {t}"
        )))
    }
}

/// Stationary entropy production `Π = (1/T_R − 1/T_L) J`.
pub fn entropy_production(params: &ModelParams, j: f64) -> Result<f64> {
    let bl = inverse_temperature(params.t_left)?;
    let br = inverse_temperature(params.t_right)?;
    Ok((br - bl) * j)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rectification {
    pub j_forward: f64,
    pub j_swapped: f64,
    pub pi_forward: f64,
    pub pi_swapped: f64,
    /// `|J→| / |J←|`.
    pub ratio: f64,
    /// `|Π→| / |Π←|`.
    pub entropy_ratio: f64,
}

/// Entropy productions of a forward and a temperature-swapped process.
pub fn rectification(
    params: &ModelParams,
    j_forward: f64,
    j_swapped: f64,
) -> Result<Rectification> {
    let pi_forward = entropy_production(params, j_forward)?;
    let pi_swapped = entropy_production(&params.swapped(), j_swapped)?;
    Ok(Rectification {
        j_forward,
        j_swapped,
        pi_forward,
        pi_swapped,
        ratio: j_forward.abs() / j_swapped.abs(),
        entropy_ratio: pi_forward.abs() / pi_swapped.abs(),
    })
}

/// Everything the numeric engine reports for one parameter point of the
/// two-site local machine.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransportReport {
    pub current: f64,
    pub heat_left: f64,
    pub heat_right: f64,
    /// `[re, im]` of the coherence.
    pub coherence: [f64; 2],
    /// Two-qubit populations `p₁..p₄`; absent for oscillator sites.
    pub populations: Option<[f64; 4]>,
    pub concurrence: Option<f64>,
    pub critical_current: Option<f64>,
    pub entropy_rate: Option<f64>,
    pub rectification_ratio: Option<f64>,
}

impl TransportReport {
    pub fn local(params: &ModelParams) -> Result<Self> {
        let spec = HilbertSpec::for_params(params);
        let l = build_local_liouvillian(params, &spec)?;
        let rho = steady_state(&l)?;
        let (ql, qr) = heat_flows(&rho, &l)?;
        let j = ql - qr;
        let coh = coherence(&rho)?;
        let qubits = spec.site_kind == SiteKind::Qubit;
        let swapped_current = || -> Result<f64> {
            let ls = build_local_liouvillian(
                &params.swapped(),
                &HilbertSpec::for_params(&params.swapped()),
            )?;
            let (_, js) = solve_current(&ls)?;
            Ok(js)
        };
        let entropy_rate = entropy_production(params, j).ok();
        let rectification_ratio = if params.t_left != params.t_right && entropy_rate.is_some() {
            let js = swapped_current()?;
            Some(rectification(params, j, js)?.ratio)
        } else {
            None
        };
        Ok(TransportReport {
            current: j,
            heat_left: ql,
            heat_right: qr,
            coherence: [coh.re, coh.im],
            populations: if qubits {
                Some(populations(&rho)?)
            } else {
                None
            },
            concurrence: if qubits {
                Some(concurrence(&rho)?)
            } else {
                None
            },
            critical_current: if qubits {
                Some(critical_current(params)?)
            } else {
                None
            },
            entropy_rate,
            rectification_ratio,
        })
    }
}

/// Rectification coefficient implied by a contrast, `(1 + C)/(1 − C)`.
pub fn ratio_from_contrast(params: &ModelParams) -> Result<f64> {
    let c = contrast(params, Bridge::Two)?.contrast;
    Ok((1.0 + c) / (1.0 - c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::local::{coherence_from_current, current_two, CurrentDirection};
    use crate::numerics::liouvillian::build_global_liouvillian;
    use nalgebra::DVector;

    fn fig2() -> ModelParams {
        ModelParams {
            t_left: 1.0,
            t_right: 0.5,
            ..ModelParams::default()
        }
    }

    fn local_state(p: &ModelParams) -> (Liouvillian, DensityMatrix) {
        let l = build_local_liouvillian(p, &HilbertSpec::for_params(p)).unwrap();
        let rho = steady_state(&l).unwrap();
        (l, rho)
    }

    fn ket(v: [f64; 4], im: [f64; 4]) -> DensityMatrix {
        let psi =
            DVector::from_iterator(4, v.iter().zip(im).map(|(&re, im)| Complex64::new(re, im)));
        DensityMatrix::pure(&psi).unwrap()
    }

    #[test]
    fn balanced_flows_and_closed_form_current() {
        let p = fig2();
        let (l, rho) = local_state(&p);
        let (ql, qr) = heat_flows(&rho, &l).unwrap();
        assert!((ql + qr).abs() <= 1e-12 * ql.abs());
        let j = current(&rho, &l).unwrap();
        let expect = current_two(&p, CurrentDirection::Forward).unwrap();
        assert!((j - expect).abs() <= 1e-10 * expect);
    }

    #[test]
    fn equal_temperatures_give_zero_current() {
        let p = ModelParams {
            t_right: 1.0,
            ..fig2()
        };
        let (l, rho) = local_state(&p);
        assert!(current(&rho, &l).unwrap().abs() < 1e-12);
    }

    #[test]
    fn non_stationary_state_is_rejected() {
        let p = fig2();
        let (l, _) = local_state(&p);
        let excited = ket([0.0, 0.0, 1.0, 0.0], [0.0; 4]);
        assert!(matches!(
            heat_flows(&excited, &l),
            Err(Error::NotStationary { .. })
        ));
    }

    #[test]
    fn coherence_matches_current() {
        let p = fig2();
        let (l, rho) = local_state(&p);
        let j = current(&rho, &l).unwrap();
        let coh = coherence(&rho).unwrap();
        let expect = coherence_from_current(j, &p).unwrap();
        assert!((coh - expect).norm() <= 1e-8 * expect.norm());
        assert!(coh.re.abs() < 1e-14);
    }

    #[test]
    fn coherence_examples() {
        let product = DensityMatrix::gibbs(&HilbertSpec::qubits(2).number(0), 0.7).unwrap();
        assert_eq!(coherence(&product).unwrap(), c(0.0));
        let s = std::f64::consts::FRAC_1_SQRT_2;
        // |ω+⟩ is real and symmetric, so its antisymmetric coherence vanishes
        let plus = ket([0.0, s, s, 0.0], [0.0; 4]);
        assert!(coherence(&plus).unwrap().norm() < 1e-15);
        // (|01⟩ + i|10⟩)/√2
        let twisted = ket([0.0, s, 0.0, 0.0], [0.0, 0.0, s, 0.0]);
        assert!((coherence(&twisted).unwrap() - Complex64::new(0.0, 0.5)).norm() < 1e-15);
        assert!(
            coherence(&DensityMatrix::gibbs(&HilbertSpec::qubits(3).number(0), 1.0).unwrap())
                .is_err()
        );
    }

    #[test]
    fn concurrence_examples() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let bell = ket([0.0, s, s, 0.0], [0.0; 4]);
        assert!((concurrence(&bell).unwrap() - 1.0).abs() < 1e-12);
        assert!((concurrence_general(&bell).unwrap() - 1.0).abs() < 1e-12);
        let product = ket([0.6, 0.0, 0.8, 0.0], [0.0; 4]);
        assert!(concurrence(&product).unwrap() < 1e-12);

        let mut m = CMatrix::zeros(4, 4);
        m[(1, 1)] = c(0.5);
        m[(2, 2)] = c(0.5);
        m[(1, 2)] = Complex64::new(0.0, 0.25);
        m[(2, 1)] = Complex64::new(0.0, -0.25);
        let x = DensityMatrix::new(m).unwrap();
        assert!((concurrence_x(&x).unwrap() - 0.5).abs() < 1e-15);
        assert!((concurrence_general(&x).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn general_path_handles_non_x_states() {
        // (|00⟩ + |01⟩ + |11⟩)/√3 has concurrence 2/3
        let s = 1.0 / 3f64.sqrt();
        let psi = ket([s, s, 0.0, s], [0.0; 4]);
        assert!(!is_x_state(&psi).unwrap());
        assert!((concurrence(&psi).unwrap() - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn closed_form_populations_match_solver() {
        for (el, er) in [
            (Statistics::Bosonic, Statistics::Bosonic),
            (Statistics::Fermionic, Statistics::Bosonic),
            (Statistics::Fermionic, Statistics::Fermionic),
        ] {
            let p = ModelParams {
                eps_left: el,
                eps_right: er,
                g: 0.03,
                ..fig2()
            };
            let (_, rho) = local_state(&p);
            let pops = populations(&rho).unwrap();
            let (p1, p4) = closed_form_populations(&p).unwrap();
            assert!((pops[0] - p1).abs() < 1e-12 && (pops[3] - p4).abs() < 1e-12);
            assert!((pops.iter().sum::<f64>() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn critical_current_forms_agree() {
        for g in [1e-3, 0.01, 0.05] {
            let p = ModelParams { g, ..fig2() };
            let a = critical_current(&p).unwrap();
            let b = critical_current_expanded(&p).unwrap();
            assert!((a - b).abs() <= 1e-12 * a, "{a} {b}");
        }
        let sym = ModelParams {
            gamma_left: 0.02,
            gamma_right: 0.02,
            t_right: 0.0,
            g: 0.01,
            ..fig2()
        };
        let a = critical_current(&sym).unwrap();
        let c5 = critical_current_symmetric(&sym).unwrap();
        assert!((a - c5).abs() <= 1e-12 * a);
        // J_c vanishes linearly in g while J vanishes quadratically
        let weak = ModelParams { g: 1e-9, ..fig2() };
        let jc = critical_current(&weak).unwrap();
        assert!(jc < 1e-8);
        assert!(current_two(&weak, CurrentDirection::Forward).unwrap() < 1e-6 * jc);
    }

    #[test]
    fn entropy_production_examples() {
        let p = fig2();
        assert_eq!(
            entropy_production(&ModelParams { t_right: 1.0, ..p }, 0.0).unwrap(),
            0.0
        );
        assert!(entropy_production(&ModelParams { t_right: 0.0, ..p }, 1.0).is_err());
        let jf = current_two(&p, CurrentDirection::Forward).unwrap();
        let js = current_two(&p, CurrentDirection::Swapped).unwrap();
        let r = rectification(&p, jf, js).unwrap();
        assert!(r.pi_forward > 0.0 && r.pi_swapped > 0.0);
        assert!((r.ratio - r.entropy_ratio).abs() <= 1e-12 * r.ratio);
        assert!((r.ratio - ratio_from_contrast(&p).unwrap()).abs() < 1e-12);

        let sym = ModelParams {
            gamma_left: 0.02,
            gamma_right: 0.02,
            ..p
        };
        let jf = current_two(&sym, CurrentDirection::Forward).unwrap();
        let js = current_two(&sym, CurrentDirection::Swapped).unwrap();
        assert_eq!(rectification(&sym, jf, js).unwrap().ratio, 1.0);
    }

    #[test]
    fn global_flows_use_the_dressed_energies() {
        let p = ModelParams {
            g: 0.8,
            t_left: 1.0,
            t_right: 0.0,
            ..ModelParams::default()
        };
        let l = build_global_liouvillian(&p).unwrap();
        let rho = steady_state(&l).unwrap();
        let j = current(&rho, &l).unwrap();
        let expect = crate::global::current_global(&p, CurrentDirection::Forward).unwrap();
        assert!((j - expect).abs() <= 1e-10 * expect);
    }

    #[test]
    fn report_for_a_point() {
        let r = TransportReport::local(&fig2()).unwrap();
        assert!(r.current > 0.0);
        assert!(r.concurrence.unwrap() >= 0.0);
        assert!(r.entropy_rate.unwrap() > 0.0);
        let pops = r.populations.unwrap();
        assert!((pops.iter().sum::<f64>() - 1.0).abs() < 1e-10);
        let osc = ModelParams {
            eps_sub: Statistics::Bosonic,
            t_left: 0.3,
            t_right: 0.1,
            ..fig2()
        };
        let r = TransportReport::local(&osc).unwrap();
        assert!(r.populations.is_none() && r.current > 0.0);
    }
}
