//! Local Rankin-Selberg factors from segment data.
//!
//! A local generic representation is modeled by its segments `(n_j, s_j)`
//! over supercuspidal classes, each class carrying a torsion number `e`.
//! Pairing two such representations produces the local factor as a product
//! of terms `(1 - c p^{-es})^{-1}` with `c = (p^ν z_j z_k')^e` over matched
//! classes, `z = p^{-s - n/2}`, and `ν` up to the shorter segment length.
//! Coefficients come either per matched class (then assembled through the
//! torsion-divisibility filter) or from the built factor's explicit
//! inverse roots; the two routes are kept independent so they can check
//! each other. Everything here is purely algebraic in `(z, n, e)`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
// Float methods come from this trait in no_std builds; when a std-enabled
// dependency joins the graph the inherent methods shadow it.
#[allow(unused_imports)]
use num_traits::Float;
use rand::Rng;

use crate::lfunc::powu;
use crate::{Error, Result, C64};

/// A supercuspidal class: an opaque label plus its torsion number (the
/// order of the cyclic group of unramified self-twists).
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SupercuspidalClass {
    pub label: String,
    #[cfg_attr(feature = "serde", serde(rename = "e"))]
    pub torsion: u32,
}

/// A segment `(n, σ + it)` attached to a supercuspidal class.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Segment {
    pub n: u32,
    pub sigma: f64,
    pub t: f64,
    pub class: String,
}

impl Segment {
    /// `s = σ + it` in the quotient normalization.
    pub fn s(&self) -> C64 {
        C64::new(self.sigma, self.t)
    }

    /// `z = p^{-s - n/2}`.
    pub fn z(&self, p: u64) -> C64 {
        let lp = (p as f64).ln();
        let expo = -(self.sigma + self.n as f64 / 2.0) * lp;
        C64::new(expo, -self.t * lp).exp()
    }
}

/// Local data of a generic representation: prime, segments, classes.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GenericRepLocal {
    #[cfg_attr(feature = "serde", serde(rename = "p"))]
    pub prime: u64,
    pub segments: Vec<Segment>,
    pub classes: Vec<SupercuspidalClass>,
}

impl GenericRepLocal {
    pub fn new(
        prime: u64,
        mut segments: Vec<Segment>,
        classes: Vec<SupercuspidalClass>,
    ) -> Result<Self> {
        if prime < 2 {
            return Err(Error::Data(format!("local rep: {prime} is not a prime")));
        }
        for c in &classes {
            if c.torsion == 0 {
                return Err(Error::Data(format!(
                    "class {}: torsion must be >= 1",
                    c.label
                )));
            }
            if classes.iter().filter(|d| d.label == c.label).count() > 1 {
                return Err(Error::Data(format!("duplicate class label {}", c.label)));
            }
        }
        for s in &segments {
            if s.n == 0 {
                return Err(Error::Data("segment length must be >= 1".into()));
            }
            if s.sigma < 0.0 {
                return Err(Error::Data(format!(
                    "segment exponent σ = {} negative",
                    s.sigma
                )));
            }
            if !classes.iter().any(|c| c.label == s.class) {
                return Err(Error::Data(format!(
                    "segment refers to unknown class {}",
                    s.class
                )));
            }
        }
        segments.sort_by(|a, b| b.sigma.partial_cmp(&a.sigma).unwrap());
        Ok(GenericRepLocal {
            prime,
            segments,
            classes,
        })
    }

    /// Torsion number of a class, if present.
    pub fn torsion(&self, label: &str) -> Option<u32> {
        self.classes
            .iter()
            .find(|c| c.label == label)
            .map(|c| c.torsion)
    }

    /// The contragredient: conjugated segment twists, identical lengths
    /// and classes. An involution.
    pub fn contragredient(&self) -> GenericRepLocal {
        GenericRepLocal {
            prime: self.prime,
            segments: self
                .segments
                .iter()
                .map(|s| Segment {
                    n: s.n,
                    sigma: s.sigma,
                    t: -s.t,
                    class: s.class.clone(),
                })
                .collect(),
            classes: self.classes.clone(),
        }
    }

    /// An unramified principal-series stand-in: every inverse root
    /// `α = p^{-s}` with `|α| <= 1` becomes a length-1 segment in one
    /// shared class of torsion 1.
    pub fn unramified(prime: u64, alphas: &[C64], label: &str) -> Result<Self> {
        let lp = (prime as f64).ln();
        let segments = alphas
            .iter()
            .map(|a| {
                if a.norm() > 1.0 + 1e-12 || a.norm_sqr() == 0.0 {
                    return Err(Error::Data(format!(
                        "unramified stand-in needs 0 < |α| <= 1, got {a}"
                    )));
                }
                Ok(Segment {
                    n: 1,
                    sigma: -a.norm().ln() / lp,
                    t: -a.arg() / lp,
                    class: label.into(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        GenericRepLocal::new(
            prime,
            segments,
            alloc::vec![SupercuspidalClass {
                label: label.into(),
                torsion: 1,
            }],
        )
    }
}

/// One factor term `(1 - c p^{-es})^{-1}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RsTerm {
    pub inverse_root: C64,
    pub stretch: u32,
}

/// The built local factor: a finite list of stretched geometric factors.
#[derive(Debug, Clone, PartialEq)]
pub struct RSLocalFactor {
    pub prime: u64,
    pub terms: Vec<RsTerm>,
}

impl RSLocalFactor {
    /// Coefficients of the log series via explicit inverse roots: each
    /// term of stretch `e` contributes its `e` roots `r` with `r^e = c`,
    /// and `λ(p^f) = Σ_r r^f` over all roots of all terms. Independent of
    /// the class-sum route.
    pub fn lambda_by_roots(&self, f: u32) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for term in &self.terms {
            let e = term.stretch;
            let modulus = term.inverse_root.norm().powf(1.0 / e as f64);
            let base_arg = term.inverse_root.arg() / e as f64;
            for j in 0..e {
                let ang = base_arg + 2.0 * core::f64::consts::PI * j as f64 / e as f64;
                let root = modulus * C64::new(0.0, ang).exp();
                acc += powu(root, f);
            }
        }
        acc
    }
}

fn shared_classes(a: &GenericRepLocal, b: &GenericRepLocal) -> Result<Vec<(String, u32)>> {
    let mut out = Vec::new();
    for c in &a.classes {
        if let Some(e2) = b.torsion(&c.label) {
            if e2 != c.torsion {
                return Err(Error::Data(format!(
                    "class {} has torsion {} on one side and {e2} on the other",
                    c.label, c.torsion
                )));
            }
            out.push((c.label.clone(), c.torsion));
        }
    }
    Ok(out)
}

/// Builds the local Rankin-Selberg factor of a pair over one prime.
///
/// One term per `(j, k, ν)` with matching class labels; disjoint labels
/// contribute nothing (the factor is identically 1).
pub fn build_rs_factor(a: &GenericRepLocal, b: &GenericRepLocal) -> Result<RSLocalFactor> {
    if a.prime != b.prime {
        return Err(Error::Data(format!(
            "prime mismatch: {} vs {}",
            a.prime, b.prime
        )));
    }
    let p = a.prime;
    let lp = (p as f64).ln();
    let mut terms = Vec::new();
    for (label, e) in shared_classes(a, b)? {
        for sj in a.segments.iter().filter(|s| s.class == label) {
            for sk in b.segments.iter().filter(|s| s.class == label) {
                for nu in 1..=sj.n.min(sk.n) {
                    // c = (p^ν z_j z_k')^e in log form: the magnitude
                    // exponent ν − σ_j − σ_k − (n_j + n_k)/2 is never
                    // positive, so |c| <= 1 and nothing overflows.
                    let mag = e as f64
                        * (nu as f64 - sj.sigma - sk.sigma - (sj.n as f64 + sk.n as f64) / 2.0)
                        * lp;
                    let arg = -(e as f64) * (sj.t + sk.t) * lp;
                    terms.push(RsTerm {
                        inverse_root: C64::new(mag, arg).exp(),
                        stretch: e,
                    });
                }
            }
        }
    }
    Ok(RSLocalFactor { prime: p, terms })
}

/// Per-class coefficient
/// `λ_ℓ(f) = Σ_ν p^{eνf} (Σ_{n_j >= ν} z_j^{ef}) (Σ_{n_k >= ν} z_k'^{ef})`,
/// folded as `Σ_ν (Σ (p^{ν/2} z_j)^{ef}) (Σ (p^{ν/2} z_k')^{ef})` so every
/// summand stays inside the unit disc.
pub fn rs_lambda_ell(a: &GenericRepLocal, b: &GenericRepLocal, label: &str, f: u32) -> Result<C64> {
    if a.prime != b.prime {
        return Err(Error::Data(format!(
            "prime mismatch: {} vs {}",
            a.prime, b.prime
        )));
    }
    if f == 0 {
        return Err(Error::Domain("rs_lambda_ell: f must be >= 1".into()));
    }
    let e = match (a.torsion(label), b.torsion(label)) {
        (Some(e1), Some(e2)) if e1 == e2 => e1,
        (Some(e1), Some(e2)) => {
            return Err(Error::Data(format!(
                "class {label} has torsion {e1} on one side and {e2} on the other"
            )))
        }
        _ => {
            return Err(Error::Domain(format!(
                "class {label} is not matched by both representations"
            )))
        }
    };
    let p = a.prime;
    let lp = (p as f64).ln();
    let ef = (e * f) as f64;
    let seg_sum = |rep: &GenericRepLocal, nu: u32| -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for s in rep
            .segments
            .iter()
            .filter(|s| s.class == label && s.n >= nu)
        {
            // (p^{ν/2} z)^{ef}
            let mag = ef * (nu as f64 / 2.0 - s.sigma - s.n as f64 / 2.0) * lp;
            let arg = -ef * s.t * lp;
            acc += C64::new(mag, arg).exp();
        }
        acc
    };
    let nu_max = a
        .segments
        .iter()
        .filter(|s| s.class == label)
        .map(|s| s.n)
        .max()
        .unwrap_or(0)
        .min(
            b.segments
                .iter()
                .filter(|s| s.class == label)
                .map(|s| s.n)
                .max()
                .unwrap_or(0),
        );
    let mut total = C64::new(0.0, 0.0);
    for nu in 1..=nu_max {
        total += seg_sum(a, nu) * seg_sum(b, nu);
    }
    Ok(total)
}

/// Full coefficient `λ(p^f) = Σ_{e_ℓ | f} e_ℓ λ_ℓ(f / e_ℓ)` over matched
/// classes whose torsion divides `f`.
pub fn rs_lambda(a: &GenericRepLocal, b: &GenericRepLocal, f: u32) -> Result<C64> {
    if f == 0 {
        return Err(Error::Domain("rs_lambda: f must be >= 1".into()));
    }
    let mut total = C64::new(0.0, 0.0);
    for (label, e) in shared_classes(a, b)? {
        if f % e == 0 {
            total += e as f64 * rs_lambda_ell(a, b, &label, f / e)?;
        }
    }
    Ok(total)
}

/// Verification of the coefficient inequality chain
/// `|λ_{π×π'}(p^f)| <= sqrt(λ_{π×π̃} λ_{π'×π̃'}) <= (λ_{π×π̃} + λ_{π'×π̃'})/2`
/// for all `f <= f_max`, with the largest signed violations reported.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropA1Report {
    /// max over f of `|λ_{π×π'}| − sqrt(diagonal product)`.
    pub max_first_violation: f64,
    /// max over f of `sqrt(diagonal product) − (sum)/2`.
    pub max_second_violation: f64,
    /// Largest imaginary part seen on a diagonal coefficient (should be
    /// rounding-level).
    pub max_diag_imag: f64,
    pub f_max: u32,
}

impl PropA1Report {
    pub fn max_violation(&self) -> f64 {
        self.max_first_violation.max(self.max_second_violation)
    }
}

pub fn verify_prop_a1(
    a: &GenericRepLocal,
    b: &GenericRepLocal,
    f_max: u32,
) -> Result<PropA1Report> {
    let a_dual = a.contragredient();
    let b_dual = b.contragredient();
    let mut rep = PropA1Report {
        max_first_violation: f64::NEG_INFINITY,
        max_second_violation: f64::NEG_INFINITY,
        max_diag_imag: 0.0,
        f_max,
    };
    for f in 1..=f_max {
        let cross = rs_lambda(a, b, f)?;
        let da = rs_lambda(a, &a_dual, f)?;
        let db = rs_lambda(b, &b_dual, f)?;
        rep.max_diag_imag = rep.max_diag_imag.max(da.im.abs()).max(db.im.abs());
        let da = da.re.max(0.0);
        let db = db.re.max(0.0);
        let geo = (da * db).sqrt();
        rep.max_first_violation = rep.max_first_violation.max(cross.norm() - geo);
        rep.max_second_violation = rep.max_second_violation.max(geo - 0.5 * (da + db));
    }
    Ok(rep)
}

/// Random local-representation pairs for the verification corpus: segment
/// lengths up to 4, exponents in `[0, 0.45]`, twists in `[-3, 3]`, torsion
/// in `{1, 2, 3}`, and a random shared/unshared class pattern.
pub fn sample_rep_pair<R: Rng>(rng: &mut R) -> (GenericRepLocal, GenericRepLocal) {
    const PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];
    let p = PRIMES[rng.gen_range(0..PRIMES.len())];
    let shared = rng.gen_range(0..=2usize);
    let own_a = rng.gen_range(if shared == 0 { 1 } else { 0 }..=2usize);
    let own_b = rng.gen_range(if shared == 0 { 1 } else { 0 }..=2usize);
    let mut classes_a = Vec::new();
    let mut classes_b = Vec::new();
    for i in 0..shared {
        let c = SupercuspidalClass {
            label: format!("s{i}"),
            torsion: rng.gen_range(1..=3),
        };
        classes_a.push(c.clone());
        classes_b.push(c);
    }
    for i in 0..own_a {
        classes_a.push(SupercuspidalClass {
            label: format!("a{i}"),
            torsion: rng.gen_range(1..=3),
        });
    }
    for i in 0..own_b {
        classes_b.push(SupercuspidalClass {
            label: format!("b{i}"),
            torsion: rng.gen_range(1..=3),
        });
    }
    let sample_segments = |rng: &mut R, classes: &[SupercuspidalClass]| {
        let count = rng.gen_range(1..=4usize);
        (0..count)
            .map(|_| Segment {
                n: rng.gen_range(1..=4),
                sigma: 0.45 * rng.gen::<f64>(),
                t: 6.0 * rng.gen::<f64>() - 3.0,
                class: classes[rng.gen_range(0..classes.len())].label.clone(),
            })
            .collect::<Vec<_>>()
    };
    let rep_a =
        GenericRepLocal::new(p, sample_segments(rng, &classes_a), classes_a).expect("valid");
    let rep_b =
        GenericRepLocal::new(p, sample_segments(rng, &classes_b), classes_b).expect("valid");
    (rep_a, rep_b)
}
