//! The axiomatic L-function class: data model and coefficient algebra.
//!
//! An L-function of degree `m` is described by its Euler data (inverse
//! roots `α_j(p)` at each prime, at most `m` of them, fewer at ramified
//! primes), its gamma data (conductor `N`, shifts `μ_j`, pole order `r`,
//! root number `κ`), and the two coefficient sequences that the Euler
//! product generates: power sums `λ(p^k) = Σ_j α_j(p)^k` and the Dirichlet
//! coefficients `a(n)`, linked by exponentiating the log series.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
// Float methods come from this trait in no_std builds; when a std-enabled
// dependency joins the graph the inherent methods shadow it.
#[allow(unused_imports)]
use num_traits::Float;
use rand::Rng;

use crate::numerics::riemann_zeta;
use crate::{arith, series, Error, Result, C64};

/// Default coefficient horizon and Euler-data coverage; both are
/// configurable per call.
pub const DEFAULT_HORIZON: u64 = 1_000_000;

/// Inverse roots of the local Euler factor at one prime.
///
/// Lists shorter than the degree model ramified primes; the empty list is
/// the fully ramified local factor 1.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalRoots {
    pub prime: u64,
    pub roots: Vec<C64>,
}

impl LocalRoots {
    pub fn new(prime: u64, roots: Vec<C64>) -> Result<Self> {
        if prime < 2 {
            return Err(Error::Data(format!("local roots: {prime} is not a prime")));
        }
        if roots
            .iter()
            .any(|a| !(a.re.is_finite() && a.im.is_finite()))
        {
            return Err(Error::Data(format!(
                "local roots at p = {prime}: non-finite root"
            )));
        }
        Ok(LocalRoots { prime, roots })
    }

    /// Checks the root-size axiom `|α_j(p)| <= p^(1 - 1/m)`.
    pub fn satisfies_size_bound(&self, degree: usize) -> bool {
        let cap = (self.prime as f64).powf(1.0 - 1.0 / degree as f64) * (1.0 + 1e-9);
        self.roots.len() <= degree && self.roots.iter().all(|a| a.norm() <= cap)
    }
}

/// Archimedean and global data of one class member.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaData {
    /// Conductor `N >= 1`.
    pub conductor: u64,
    /// The `m` gamma-shift parameters.
    pub mu: Vec<C64>,
    /// Degree `m >= 1`.
    pub degree: usize,
    /// Order `r` of the pole at `s = 1`, `0 <= r <= m`.
    pub pole_order: u32,
    /// Root number, unimodular.
    pub root_number: C64,
}

impl GammaData {
    pub fn new(
        conductor: u64,
        mu: Vec<C64>,
        degree: usize,
        pole_order: u32,
        root_number: C64,
    ) -> Result<Self> {
        if degree == 0 {
            return Err(Error::Data("gamma data: degree must be >= 1".into()));
        }
        if conductor == 0 {
            return Err(Error::Data("gamma data: conductor must be >= 1".into()));
        }
        if mu.len() != degree {
            return Err(Error::Data(format!(
                "gamma data: {} shifts for degree {degree}",
                mu.len()
            )));
        }
        let floor = -(1.0 - 1.0 / degree as f64) - 1e-9;
        if let Some(bad) = mu.iter().find(|m| m.re < floor) {
            return Err(Error::Data(format!(
                "gamma data: Re mu = {} below -(1 - 1/m) = {floor:.6}",
                bad.re
            )));
        }
        if (root_number.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::Data(format!(
                "gamma data: |root number| = {} is not 1",
                root_number.norm()
            )));
        }
        if pole_order as usize > degree {
            return Err(Error::Data(format!(
                "gamma data: pole order {pole_order} exceeds degree {degree}"
            )));
        }
        Ok(GammaData {
            conductor,
            mu,
            degree,
            pole_order,
            root_number,
        })
    }
}

/// Euler data: either one root pattern shared by every prime, or an
/// explicit table for primes up to some bound.
#[derive(Debug, Clone, PartialEq)]
pub enum EulerData {
    /// Same inverse roots at every prime (the Riemann-zeta pattern `[1]`
    /// and synthetic instances).
    Uniform(Vec<C64>),
    /// Per-prime table, covering all primes up to the declared `p_max`.
    Table(BTreeMap<u64, LocalRoots>),
}

/// One member of the class: gamma data plus Euler data with its coverage
/// bound, under a human-readable label.
#[derive(Debug, Clone, PartialEq)]
pub struct LFunctionSpec {
    pub gamma: GammaData,
    pub euler: EulerData,
    /// Primes `p <= p_max` are covered by the Euler data.
    pub p_max: u64,
    pub label: String,
}

impl LFunctionSpec {
    pub fn new(gamma: GammaData, euler: EulerData, p_max: u64, label: String) -> Result<Self> {
        let spec = LFunctionSpec {
            gamma,
            euler,
            p_max,
            label,
        };
        spec.validate_axioms()?;
        Ok(spec)
    }

    /// The Riemann zeta instance: every local factor `(1 - p^{-s})^{-1}`.
    pub fn zeta() -> Self {
        LFunctionSpec {
            gamma: GammaData::new(1, vec![C64::new(0.0, 0.0)], 1, 1, C64::new(1.0, 0.0)).unwrap(),
            euler: EulerData::Uniform(vec![C64::new(1.0, 0.0)]),
            p_max: u64::MAX,
            label: "zeta".into(),
        }
    }

    /// Checks the size axioms on every stored root list and shift.
    pub fn validate_axioms(&self) -> Result<()> {
        let m = self.gamma.degree;
        match &self.euler {
            EulerData::Uniform(roots) => {
                // The uniform pattern must pass the bound at p = 2, the
                // worst case of `p^(1-1/m)`.
                let probe = LocalRoots {
                    prime: 2,
                    roots: roots.clone(),
                };
                if !probe.satisfies_size_bound(m) {
                    return Err(Error::Data(format!(
                        "{}: uniform roots violate the size axiom at p = 2",
                        self.label
                    )));
                }
            }
            EulerData::Table(map) => {
                for lr in map.values() {
                    if !lr.satisfies_size_bound(m) {
                        return Err(Error::Data(format!(
                            "{}: roots at p = {} violate the size axiom",
                            self.label, lr.prime
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Inverse roots at a prime; ramified primes may return fewer than `m`.
    pub fn local_roots(&self, p: u64) -> Result<Vec<C64>> {
        if p > self.p_max {
            return Err(Error::Data(format!(
                "{}: prime {p} beyond Euler data coverage p_max = {}",
                self.label, self.p_max
            )));
        }
        match &self.euler {
            EulerData::Uniform(roots) => Ok(roots.clone()),
            EulerData::Table(map) => Ok(map.get(&p).map(|lr| lr.roots.clone()).unwrap_or_default()),
        }
    }

    /// Power sum `λ(p^k)`.
    pub fn lambda(&self, p: u64, k: u32) -> Result<C64> {
        let roots = self.local_roots(p)?;
        Ok(power_sum(&roots, k))
    }

    /// Local Dirichlet coefficients `a(p^0), ..., a(p^J)`.
    pub fn dirichlet_local(&self, p: u64, j: usize) -> Result<Vec<C64>> {
        let roots = self.local_roots(p)?;
        Ok(euler_to_dirichlet(&roots, j))
    }

    /// The contragredient: all roots and shifts conjugated, root number
    /// conjugated.
    pub fn contragredient(&self) -> Self {
        let euler = match &self.euler {
            EulerData::Uniform(r) => EulerData::Uniform(r.iter().map(|a| a.conj()).collect()),
            EulerData::Table(map) => EulerData::Table(
                map.iter()
                    .map(|(&p, lr)| {
                        (
                            p,
                            LocalRoots {
                                prime: p,
                                roots: lr.roots.iter().map(|a| a.conj()).collect(),
                            },
                        )
                    })
                    .collect(),
            ),
        };
        LFunctionSpec {
            gamma: GammaData {
                conductor: self.gamma.conductor,
                mu: self.gamma.mu.iter().map(|m| m.conj()).collect(),
                degree: self.gamma.degree,
                pole_order: self.gamma.pole_order,
                root_number: self.gamma.root_number.conj(),
            },
            euler,
            p_max: self.p_max,
            label: format!("{}~", self.label),
        }
    }

    /// Rankin-Selberg pairing by products of root sets, valid at unramified
    /// primes: the paired roots are `{α_i β_j}`. Gamma data combines shifts
    /// additively; the pole order is supplied by the caller (1 for a pairing
    /// with the contragredient).
    pub fn rs_pair(&self, other: &LFunctionSpec, pole_order: u32) -> Result<LFunctionSpec> {
        let m = self.gamma.degree * other.gamma.degree;
        let mut mu = Vec::with_capacity(m);
        for a in &self.gamma.mu {
            for b in &other.gamma.mu {
                mu.push(a + b);
            }
        }
        let pair_roots = |x: &[C64], y: &[C64]| -> Vec<C64> {
            let mut out = Vec::with_capacity(x.len() * y.len());
            for a in x {
                for b in y {
                    out.push(a * b);
                }
            }
            out
        };
        let p_max = self.p_max.min(other.p_max);
        let euler = match (&self.euler, &other.euler) {
            (EulerData::Uniform(x), EulerData::Uniform(y)) => EulerData::Uniform(pair_roots(x, y)),
            _ => {
                let mut map = BTreeMap::new();
                for p in arith::primes_up_to(p_max) {
                    let x = self.local_roots(p)?;
                    let y = other.local_roots(p)?;
                    map.insert(
                        p,
                        LocalRoots {
                            prime: p,
                            roots: pair_roots(&x, &y),
                        },
                    );
                }
                EulerData::Table(map)
            }
        };
        LFunctionSpec::new(
            GammaData::new(
                self.gamma.conductor.saturating_mul(other.gamma.conductor),
                mu,
                m,
                pole_order,
                C64::new(1.0, 0.0),
            )?,
            euler,
            p_max,
            format!("{}x{}", self.label, other.label),
        )
    }
}

/// Power sum of inverse roots: `λ(p^k) = Σ_j α_j^k`.
pub fn lambda_prime_power(roots: &LocalRoots, k: u32) -> C64 {
    power_sum(&roots.roots, k)
}

/// Power sum over a bare root list.
pub fn power_sum_of(roots: &[C64], k: u32) -> C64 {
    power_sum(roots, k)
}

pub(crate) fn power_sum(roots: &[C64], k: u32) -> C64 {
    roots.iter().map(|a| powu(*a, k)).sum()
}

pub(crate) fn powu(base: C64, mut k: u32) -> C64 {
    let mut acc = C64::new(1.0, 0.0);
    let mut b = base;
    while k > 0 {
        if k & 1 == 1 {
            acc *= b;
        }
        b *= b;
        k >>= 1;
    }
    acc
}

/// Dirichlet coefficients from power sums: coefficients of
/// `exp(Σ_k λ(p^k) X^k / k)`, so `a(p^0) = 1`.
///
/// ```
/// use lfclass::C64;
/// // λ ≡ 1 is the zeta local factor: a ≡ 1.
/// let a = lfclass::lfunc::exp_identity_coeffs(&[C64::new(1.0, 0.0); 6]);
/// assert!(a.iter().all(|x| (x - 1.0).norm() < 1e-14));
/// ```
pub fn exp_identity_coeffs(lambda: &[C64]) -> Vec<C64> {
    let mut l = vec![C64::new(0.0, 0.0); lambda.len() + 1];
    for (k, lam) in lambda.iter().enumerate() {
        l[k + 1] = lam / (k as f64 + 1.0);
    }
    series::exp(&l)
}

/// Power sums recovered from Dirichlet coefficients (`a[0] = 1`) by the
/// log-series inversion; inverse of [`exp_identity_coeffs`].
pub fn lambda_from_coeffs(a: &[C64]) -> Vec<C64> {
    let l = series::log(a);
    l.iter()
        .enumerate()
        .skip(1)
        .map(|(k, lk)| lk * k as f64)
        .collect()
}

/// Local Dirichlet coefficients straight from the roots, by convolving the
/// geometric series of each factor `(1 - αX)^{-1}`.
pub fn euler_to_dirichlet(roots: &[C64], j: usize) -> Vec<C64> {
    let mut a = vec![C64::new(0.0, 0.0); j + 1];
    a[0] = C64::new(1.0, 0.0);
    for alpha in roots {
        // Multiply by (1 - alpha X)^{-1}: prefix recurrence.
        for i in 1..=j {
            let prev = a[i - 1];
            a[i] += alpha * prev;
        }
    }
    a
}

/// Analytic conductor `C = N Π_j (1 + |μ_j|)`.
pub fn analytic_conductor(gamma: &GammaData) -> f64 {
    let mut c = gamma.conductor as f64;
    for m in &gamma.mu {
        c *= 1.0 + m.norm();
    }
    c
}

/// Best known progress toward the Ramanujan bound for degree `m`.
///
/// ```
/// assert_eq!(lfclass::lfunc::theta_bound(1), 0.0);
/// assert_eq!(lfclass::lfunc::theta_bound(2), 7.0 / 64.0);
/// assert_eq!(lfclass::lfunc::theta_bound(3), 0.5 - 0.1);
/// ```
pub fn theta_bound(m: u32) -> f64 {
    match m {
        0 => f64::NAN,
        1 => 0.0,
        2 => 7.0 / 64.0,
        _ => 0.5 - 1.0 / (m as f64 * m as f64 + 1.0),
    }
}

/// Report of the averaged prime-sum check
/// `Σ |λ(n)| Λ(n) / n^(1+η) <= m/η + m log C + O(m²)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PrimeSumReport {
    /// Truncated sum over prime powers up to the horizon.
    pub truncated_sum: f64,
    /// Rigorous tail bound from the root-size axiom (may be infinite when
    /// the axiom's worst case diverges at this η).
    pub tail_bound: f64,
    /// The explicit part of the bound, `m/η + m log C`.
    pub explicit_bound: f64,
    /// `explicit_bound - (truncated_sum + tail_bound)`; the unknown `O(m²)`
    /// constant is reported through this margin, never asserted.
    pub margin: f64,
    pub horizon: u64,
}

/// Evaluates both sides of the averaged coefficient bound at shift `η`.
pub fn prime_sum_check(spec: &LFunctionSpec, eta: f64, horizon: u64) -> Result<PrimeSumReport> {
    if eta <= 0.0 {
        return Err(Error::Domain(format!(
            "prime_sum_check: eta = {eta} must be positive"
        )));
    }
    if horizon > spec.p_max {
        return Err(Error::Data(format!(
            "prime_sum_check: horizon {horizon} beyond Euler coverage {}",
            spec.p_max
        )));
    }
    let m = spec.gamma.degree as f64;
    let mut sum = 0.0;
    for p in arith::primes_up_to(horizon) {
        let roots = spec.local_roots(p)?;
        let lp = (p as f64).ln();
        let mut pk = p;
        let mut k = 1u32;
        loop {
            sum += power_sum(&roots, k).norm() * lp / (pk as f64).powf(1.0 + eta);
            match pk.checked_mul(p) {
                Some(next) if next <= horizon => pk = next,
                _ => break,
            }
            k += 1;
        }
    }
    // Tail: |λ(p^k)| <= m p^{k(1-1/m)} gives Σ_{n>H} Λ(n) m n^{-1/m-η},
    // bounded by partial summation with ψ(x) <= 1.04 x when it converges.
    let c = 1.0 / m + eta;
    let tail_bound = if c > 1.0 {
        1.04 * m * c / (c - 1.0) * (horizon as f64).powf(1.0 - c)
    } else {
        f64::INFINITY
    };
    let explicit_bound = m / eta + m * analytic_conductor(&spec.gamma).ln();
    Ok(PrimeSumReport {
        truncated_sum: sum,
        tail_bound,
        explicit_bound,
        margin: explicit_bound - (sum + tail_bound),
        horizon,
    })
}

/// Partial Dirichlet sum with a rigorous tail bound.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesValue {
    pub value: C64,
    /// Tail bound from the root-size axiom via Rankin's trick; infinite
    /// when that worst case does not converge at this point.
    pub tail_bound: f64,
    pub terms: u64,
}

/// Evaluates `L(s)` by its Dirichlet series in the half-plane of absolute
/// convergence, over `n <= horizon`.
pub fn evaluate_series(spec: &LFunctionSpec, s: C64, horizon: u64) -> Result<SeriesValue> {
    if s.re <= 1.0 {
        return Err(Error::Domain(format!(
            "evaluate_series: Re s = {} is not > 1",
            s.re
        )));
    }
    let table = CoefficientTable::build(spec, horizon)?;
    let mut value = C64::new(1.0, 0.0);
    for n in 2..=horizon {
        let a = table.a(n);
        if a.norm_sqr() != 0.0 {
            value += a * (-s * (n as f64).ln()).exp();
        }
    }
    // Rankin: Σ_{n>H} d_m(n) n^{-σ0} <= H^{σ1-σ0} ζ(σ1)^m for 1 < σ1 < σ0,
    // with σ0 = Re s - (1 - 1/m).
    let m = spec.gamma.degree as f64;
    let sigma0 = s.re - (1.0 - 1.0 / m);
    let mut tail_bound = f64::INFINITY;
    if sigma0 > 1.0 {
        for i in 1..32 {
            let sigma1 = 1.0 + (sigma0 - 1.0) * i as f64 / 32.0;
            let z = riemann_zeta(C64::new(sigma1, 0.0))?.re;
            let b = (horizon as f64).powf(sigma1 - sigma0) * z.powf(m);
            if b < tail_bound {
                tail_bound = b;
            }
        }
    }
    Ok(SeriesValue {
        value,
        tail_bound,
        terms: horizon,
    })
}

/// Multiplicative coefficient tables built from the Euler data.
#[derive(Debug, Clone)]
pub struct CoefficientTable {
    /// Power sums at prime powers `p^k <= horizon` (zero elsewhere by the
    /// usual convention).
    pub lambda: BTreeMap<u64, C64>,
    /// Dirichlet coefficients for `1 <= n <= horizon` (index 0 unused).
    a: Vec<C64>,
    pub horizon: u64,
}

impl CoefficientTable {
    /// Extends the local data multiplicatively up to `horizon`.
    pub fn build(spec: &LFunctionSpec, horizon: u64) -> Result<Self> {
        if horizon > spec.p_max {
            return Err(Error::Data(format!(
                "coefficient table: horizon {horizon} beyond Euler coverage {}",
                spec.p_max
            )));
        }
        let n = horizon as usize;
        let spf = arith::spf_table(n);
        let mut a = vec![C64::new(0.0, 0.0); n + 1];
        let mut lambda = BTreeMap::new();
        if n >= 1 {
            a[1] = C64::new(1.0, 0.0);
        }
        // Local expansions cached per prime as they are first touched.
        let mut local: BTreeMap<u64, Vec<C64>> = BTreeMap::new();
        for i in 2..=n {
            let p = spf[i] as u64;
            let mut rest = i as u64;
            let mut k = 0usize;
            while rest % p == 0 {
                rest /= p;
                k += 1;
            }
            let entry = local.entry(p);
            let exp = match entry {
                alloc::collections::btree_map::Entry::Occupied(e) => e.into_mut(),
                alloc::collections::btree_map::Entry::Vacant(v) => {
                    let roots = spec.local_roots(p)?;
                    let jmax = (horizon as f64).ln() / (p as f64).ln();
                    v.insert(euler_to_dirichlet(&roots, jmax as usize + 1))
                }
            };
            a[i] = exp[k] * a[rest as usize];
            if rest == 1 {
                let roots = spec.local_roots(p)?;
                lambda.insert(i as u64, power_sum(&roots, k as u32));
            }
        }
        Ok(CoefficientTable { lambda, a, horizon })
    }

    /// Dirichlet coefficient `a(n)`, `1 <= n <= horizon`.
    pub fn a(&self, n: u64) -> C64 {
        self.a[n as usize]
    }

    /// `λ(n)`: the stored power sum at prime powers, zero elsewhere.
    pub fn lambda(&self, n: u64) -> C64 {
        self.lambda.get(&n).copied().unwrap_or(C64::new(0.0, 0.0))
    }
}

/// One parsed coefficient record: a prime and its inverse roots.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientRecord {
    pub prime: u64,
    pub roots: Vec<C64>,
}

/// Parses the coefficient ingestion format: one record per line, either
/// `p,alpha_re:alpha_im[,alpha_re:alpha_im...]` (explicit inverse roots;
/// an empty list marks a fully ramified prime) or `p,a_p` (a normalized
/// Hecke eigenvalue, turned into the roots of `X² - a_p X + 1`). Blank
/// lines and `#` comments are skipped. Errors carry the line number.
pub fn parse_coefficient_records(text: &str) -> Result<Vec<CoefficientRecord>> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let lineno = idx + 1;
        let mut fields = line.split(',');
        let p: u64 = fields
            .next()
            .unwrap()
            .trim()
            .parse()
            .map_err(|_| Error::Data(format!("line {lineno}: bad prime field")))?;
        if p < 2 || !is_prime(p) {
            return Err(Error::Data(format!("line {lineno}: {p} is not a prime")));
        }
        let rest: Vec<&str> = fields.map(str::trim).collect();
        let roots =
            if rest.is_empty() || (rest.len() == 1 && rest[0].is_empty()) {
                Vec::new()
            } else if rest.len() == 1 && !rest[0].contains(':') {
                // Normalized Hecke eigenvalue: roots of X² - a X + 1.
                let a: f64 = rest[0]
                    .parse()
                    .map_err(|_| Error::Data(format!("line {lineno}: bad eigenvalue field")))?;
                let half = a / 2.0;
                let disc = half * half - 1.0;
                if disc <= 0.0 {
                    let im = (-disc).sqrt();
                    vec![C64::new(half, im), C64::new(half, -im)]
                } else {
                    let root = disc.sqrt();
                    vec![C64::new(half + root, 0.0), C64::new(half - root, 0.0)]
                }
            } else {
                rest.iter()
                    .map(|f| {
                        let mut parts = f.split(':');
                        let re: f64 = parts.next().unwrap().trim().parse().map_err(|_| {
                            Error::Data(format!("line {lineno}: bad root field {f}"))
                        })?;
                        let im: f64 = parts.next().unwrap_or("0").trim().parse().map_err(|_| {
                            Error::Data(format!("line {lineno}: bad root field {f}"))
                        })?;
                        Ok(C64::new(re, im))
                    })
                    .collect::<Result<Vec<C64>>>()?
            };
        out.push(CoefficientRecord { prime: p, roots });
    }
    Ok(out)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Builds a degree-`m` spec from parsed records, validating the root-size
/// axiom at every prime; violations are reported with the offending prime.
pub fn spec_from_records(
    records: Vec<CoefficientRecord>,
    gamma: GammaData,
    label: String,
) -> Result<LFunctionSpec> {
    let m = gamma.degree;
    let mut map = BTreeMap::new();
    let mut p_max = 0u64;
    for rec in records {
        let lr = LocalRoots::new(rec.prime, rec.roots)?;
        if !lr.satisfies_size_bound(m) {
            return Err(Error::Data(format!(
                "root-size axiom violated at p = {} (degree {m})",
                rec.prime
            )));
        }
        p_max = p_max.max(rec.prime);
        map.insert(rec.prime, lr);
    }
    // Coverage requires every prime up to the largest to be present.
    for p in arith::primes_up_to(p_max) {
        if !map.contains_key(&p) {
            return Err(Error::Data(format!(
                "missing record for prime {p}; coverage must be contiguous"
            )));
        }
    }
    LFunctionSpec::new(gamma, EulerData::Table(map), p_max, label)
}

/// The archimedean four-point quotient
/// `(1+|z1+w̄1|)(1+|z2+w̄2|) / Π (1+|·|)` over the four cross pairings.
pub fn archimedean_quotient(z1: C64, z2: C64, w1: C64, w2: C64) -> f64 {
    let num = (1.0 + (z1 + w1.conj()).norm()) * (1.0 + (z2 + w2.conj()).norm());
    let den = (1.0 + (z1 + z2).norm())
        * (1.0 + (z1 + w2).norm())
        * (1.0 + (w1 + z2).norm())
        * (1.0 + (w1 + w2).norm());
    num / den
}

/// Maximum of the archimedean quotient over a random corpus with all real
/// parts at least -1/2; returns the maximum and the worst sample.
pub fn archimedean_quotient_max(trials: u64, seed: u64, im_range: f64) -> (f64, [C64; 4]) {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut best = 0.0f64;
    let mut worst = [C64::new(0.0, 0.0); 4];
    for _ in 0..trials {
        let mut sample = [C64::new(0.0, 0.0); 4];
        for slot in &mut sample {
            let re = -0.5 + rng.gen::<f64>() * 3.0;
            let im = (rng.gen::<f64>() - 0.5) * 2.0 * im_range;
            *slot = C64::new(re, im);
        }
        let q = archimedean_quotient(sample[0], sample[1], sample[2], sample[3]);
        if q > best {
            best = q;
            worst = sample;
        }
    }
    (best, worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn lambda_power_sums() {
        let r = LocalRoots::new(2, vec![c(1.0, 0.0)]).unwrap();
        assert_abs_diff_eq!(lambda_prime_power(&r, 5).re, 1.0, epsilon = 1e-15);

        // Conjugate pair on the unit circle: λ(p^k) = 2 cos(kθ).
        let theta = 1.234f64;
        let r = LocalRoots::new(
            5,
            vec![c(theta.cos(), theta.sin()), c(theta.cos(), -theta.sin())],
        )
        .unwrap();
        for k in 1..=6u32 {
            let v = lambda_prime_power(&r, k);
            assert_abs_diff_eq!(v.re, 2.0 * (k as f64 * theta).cos(), epsilon = 1e-12);
            assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-12);
        }

        let r = LocalRoots::new(7, vec![c(2.0, 0.0), c(3.0, 0.0)]).unwrap();
        assert_abs_diff_eq!(lambda_prime_power(&r, 2).re, 13.0, epsilon = 1e-12);
    }

    #[test]
    fn exp_identity_all_ones() {
        // λ ≡ 1 gives a ≡ 1 (the zeta local factor).
        let lambda = vec![c(1.0, 0.0); 10];
        let a = exp_identity_coeffs(&lambda);
        for x in &a {
            assert!((x - 1.0).norm() < 1e-13);
        }
    }

    #[test]
    fn exp_identity_order_two_symbolic() {
        // a(p²) = (λ(p)² + λ(p²)) / 2, from expanding exp to order 2.
        let l1 = c(0.7, -0.3);
        let l2 = c(-0.2, 0.5);
        let a = exp_identity_coeffs(&[l1, l2]);
        let expected = (l1 * l1 + l2) * 0.5;
        assert!((a[2] - expected).norm() < 1e-14);
    }

    #[test]
    fn exp_identity_matches_euler_product_expansion() {
        // Roots {α, 1/α}: exp-identity output equals the direct expansion
        // of the product of two geometric series.
        let alpha = c(0.8, 0.45);
        let roots = [alpha, alpha.inv()];
        let j = 12;
        let lambda: Vec<C64> = (1..=j as u32).map(|k| power_sum(&roots, k)).collect();
        let via_exp = exp_identity_coeffs(&lambda);
        let g1 = series::geometric(roots[0], 1, j);
        let g2 = series::geometric(roots[1], 1, j);
        let via_product = series::mul(&g1, &g2, j);
        for (x, y) in via_exp.iter().zip(via_product.iter()) {
            assert!((x - y).norm() < 1e-12);
        }
    }

    #[test]
    fn euler_to_dirichlet_cases() {
        // Single root 1: a(p^j) = 1.
        let a = euler_to_dirichlet(&[c(1.0, 0.0)], 6);
        for x in &a {
            assert!((x - 1.0).norm() < 1e-15);
        }
        // Fully ramified: a(p^0) = 1, rest 0.
        let a = euler_to_dirichlet(&[], 4);
        assert!((a[0] - 1.0).norm() < 1e-15);
        for x in &a[1..] {
            assert!(x.norm() == 0.0);
        }
        // Two roots: a(p^j) = Σ α^i β^(j-i), checked against the direct
        // geometric-product convolution.
        let (alpha, beta) = (c(0.3, 0.6), c(-0.5, 0.2));
        let a = euler_to_dirichlet(&[alpha, beta], 8);
        for j in 0..=8usize {
            let mut expected = c(0.0, 0.0);
            for i in 0..=j {
                expected += powu(alpha, i as u32) * powu(beta, (j - i) as u32);
            }
            assert!((a[j] - expected).norm() < 1e-13);
        }
    }

    #[test]
    fn conductor_examples() {
        let zeta = GammaData::new(1, vec![c(0.0, 0.0)], 1, 1, c(1.0, 0.0)).unwrap();
        assert_abs_diff_eq!(analytic_conductor(&zeta), 1.0, epsilon = 1e-15);

        let odd = GammaData::new(101, vec![c(1.0, 0.0)], 1, 0, c(1.0, 0.0)).unwrap();
        assert_abs_diff_eq!(analytic_conductor(&odd), 202.0, epsilon = 1e-12);

        // Holomorphic weight-12 level-1 with the split gamma convention:
        // shifts 11/2 and 13/2.
        let delta = GammaData::new(1, vec![c(5.5, 0.0), c(6.5, 0.0)], 2, 0, c(1.0, 0.0)).unwrap();
        assert_abs_diff_eq!(analytic_conductor(&delta), 48.75, epsilon = 1e-12);
    }

    #[test]
    fn theta_bound_table() {
        assert_eq!(theta_bound(1), 0.0);
        assert_eq!(theta_bound(2), 7.0 / 64.0);
        assert_abs_diff_eq!(theta_bound(3), 0.4, epsilon = 1e-15);
    }

    #[test]
    fn prime_sum_zeta_at_eta_one() {
        // Σ Λ(n)/n² = -ζ'(2)/ζ(2), by an independent direct summation.
        let spec = LFunctionSpec::zeta();
        let report = prime_sum_check(&spec, 1.0, 200_000).unwrap();
        let mut oracle = 0.0;
        for p in arith::primes_up_to(2_000_000) {
            let lp = (p as f64).ln();
            let mut pk = p as f64;
            while pk <= 4e12 {
                oracle += lp / (pk * pk);
                pk *= p as f64;
            }
        }
        assert!((report.truncated_sum - oracle).abs() < report.tail_bound + 1e-6);
        assert!(report.truncated_sum < oracle);
        assert!((oracle - 0.5699).abs() < 1e-3);
        assert!(report.margin > 0.0);
    }

    #[test]
    fn prime_sum_large_eta_dominated_by_two() {
        let spec = LFunctionSpec::zeta();
        let report = prime_sum_check(&spec, 30.0, 10_000).unwrap();
        let leading = 2.0f64.ln() / 2.0f64.powf(31.0);
        assert!((report.truncated_sum - leading) / leading < 1e-4);
        assert!(report.truncated_sum < 1e-8);
    }

    #[test]
    fn evaluate_series_zeta_values() {
        let spec = LFunctionSpec::zeta();
        let v = evaluate_series(&spec, c(1.5, 0.0), 3_000_000).unwrap();
        assert!(v.tail_bound.is_finite());
        assert!(
            (v.value.re - 2.612_375_348_685_488).abs() <= v.tail_bound + 1e-9,
            "zeta(3/2): {} vs known, tail {}",
            v.value.re,
            v.tail_bound
        );
        let v = evaluate_series(&spec, c(2.0, 0.0), 1_000_000).unwrap();
        assert!((v.value.re - core::f64::consts::PI.powi(2) / 6.0).abs() <= v.tail_bound + 1e-12);
    }

    #[test]
    fn evaluate_series_rejects_left_halfplane() {
        let spec = LFunctionSpec::zeta();
        assert!(matches!(
            evaluate_series(&spec, c(0.9, 0.0), 1000),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn coefficient_table_multiplicative() {
        // Synthetic degree-2 instance with uniform roots.
        let gamma = GammaData::new(1, vec![c(0.0, 0.0), c(0.5, 0.0)], 2, 0, c(1.0, 0.0)).unwrap();
        let spec = LFunctionSpec::new(
            gamma,
            EulerData::Uniform(vec![c(0.6, 0.3), c(0.6, -0.3)]),
            u64::MAX,
            "synthetic".into(),
        )
        .unwrap();
        let t = CoefficientTable::build(&spec, 5000).unwrap();
        for &(n1, n2) in &[(4u64, 9u64), (8, 27), (5, 49), (25, 169), (3, 11)] {
            let lhs = t.a(n1 * n2);
            let rhs = t.a(n1) * t.a(n2);
            assert!((lhs - rhs).norm() < 1e-12, "multiplicativity at {n1},{n2}");
        }
        // λ vanishes off prime powers.
        assert_eq!(t.lambda(12), c(0.0, 0.0));
        assert_eq!(t.lambda(1), c(0.0, 0.0));
        assert!((t.lambda(8) - power_sum(&spec.local_roots(2).unwrap(), 3)).norm() < 1e-13);
    }

    #[test]
    fn newton_duality_roundtrip() {
        let lambda: Vec<C64> = (1..=20)
            .map(|k| c((k as f64 * 0.37).sin(), (k as f64 * 0.11).cos() * 0.5))
            .collect();
        let a = exp_identity_coeffs(&lambda);
        let back = lambda_from_coeffs(&a);
        for (x, y) in lambda.iter().zip(back.iter()) {
            assert!((x - y).norm() < 1e-12);
        }
    }

    #[test]
    fn contragredient_conjugates_lambda() {
        let spec = LFunctionSpec::new(
            GammaData::new(1, vec![c(0.0, 0.3), c(0.0, -0.1)], 2, 0, c(0.6, 0.8)).unwrap(),
            EulerData::Uniform(vec![c(0.3, 0.7), c(0.2, -0.4)]),
            u64::MAX,
            "s".into(),
        )
        .unwrap();
        let dual = spec.contragredient();
        for k in 1..=8u32 {
            let l = spec.lambda(7, k).unwrap();
            let ld = dual.lambda(7, k).unwrap();
            assert!((ld - l.conj()).norm() < 1e-13);
        }
    }

    #[test]
    fn rs_pair_multiplies_power_sums() {
        let a = LFunctionSpec::new(
            GammaData::new(1, vec![c(0.0, 0.0), c(1.0, 0.0)], 2, 0, c(1.0, 0.0)).unwrap(),
            EulerData::Uniform(vec![c(0.5, 0.5), c(0.5, -0.5)]),
            u64::MAX,
            "a".into(),
        )
        .unwrap();
        let b = a.contragredient();
        let pair = a.rs_pair(&b, 1).unwrap();
        for k in 1..=6u32 {
            let lhs = pair.lambda(11, k).unwrap();
            let rhs = a.lambda(11, k).unwrap() * b.lambda(11, k).unwrap();
            assert!((lhs - rhs).norm() < 1e-12);
        }
        // Diagonal pairing has nonnegative power sums.
        for k in 1..=6u32 {
            let l = pair.lambda(13, k).unwrap();
            assert!(l.re >= -1e-12 && l.im.abs() < 1e-12);
        }
    }

    #[test]
    fn axiom_validation_rejects_oversized_roots() {
        let gamma = GammaData::new(1, vec![c(0.0, 0.0)], 1, 0, c(1.0, 0.0)).unwrap();
        let r = LFunctionSpec::new(
            gamma,
            EulerData::Uniform(vec![c(1.5, 0.0)]),
            u64::MAX,
            "bad".into(),
        );
        assert!(matches!(r, Err(Error::Data(_))));
    }

    #[test]
    fn archimedean_quotient_examples() {
        let z = c(0.0, 0.0);
        assert_abs_diff_eq!(archimedean_quotient(z, z, z, z), 1.0, epsilon = 1e-15);
        for &x in &[0.0, 0.5, 2.0, 7.5] {
            let v = c(x, 0.0);
            let q = archimedean_quotient(v, v, v, v);
            let expected = (1.0 + 2.0 * x).powi(2) / (1.0 + 2.0 * x).powi(4);
            assert_abs_diff_eq!(q, expected, epsilon = 1e-12);
            assert!(q <= 1.0);
        }
    }

    #[test]
    fn archimedean_quotient_corpus_is_bounded() {
        let (max, _) = archimedean_quotient_max(20_000, 7, 10.0);
        assert!(max.is_finite());
        assert!(max < 16.0, "observed quotient {max}");
    }
}
