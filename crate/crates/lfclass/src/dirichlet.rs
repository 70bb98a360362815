//! Dirichlet characters and their L-functions on the whole plane.
//!
//! Characters are stored as value tables over one period, built from the
//! cyclic decomposition of the unit group. Evaluation goes through the
//! Hurwitz decomposition `L(s, χ) = q^{-s} Σ_a χ(a) ζ(s, a/q)`, which
//! continues to every `s` except the pole of the principal character, and
//! the completed function carries the gamma factor, conductor power and
//! pole factors needed for zero work.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
// Float methods come from this trait in no_std builds; when a std-enabled
// dependency joins the graph the inherent methods shadow it.
#[allow(unused_imports)]
use num_traits::Float;

use crate::lfunc::GammaData;
use crate::numerics::{hurwitz_zeta_reg, hurwitz_zeta_reg_jet, log_gamma, LN_PI};
use crate::{arith, Error, Result, C64};

/// Parity of a character: the sign of `χ(-1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// A Dirichlet character stored as its value table over one period.
#[derive(Debug, Clone, PartialEq)]
pub struct DirichletCharacter {
    pub modulus: u64,
    /// `values[n]` is `χ(n mod q)`; zero off the unit group.
    pub values: Vec<C64>,
    pub parity: Parity,
    pub primitive: bool,
    /// Conductor (modulus of the primitive character inducing this one).
    pub conductor: u64,
    /// Index within the canonical enumeration of the group (0 = principal).
    pub index: usize,
}

impl DirichletCharacter {
    /// χ(n), by periodicity.
    pub fn eval(&self, n: u64) -> C64 {
        self.values[(n % self.modulus.max(1)) as usize]
    }

    pub fn is_principal(&self) -> bool {
        self.index == 0
    }

    /// True when every value is real (quadratic or principal).
    pub fn is_real(&self) -> bool {
        self.values.iter().all(|v| v.im.abs() < 1e-14)
    }

    /// The conjugate character.
    pub fn conjugate(&self) -> DirichletCharacter {
        DirichletCharacter {
            modulus: self.modulus,
            values: self.values.iter().map(|v| v.conj()).collect(),
            parity: self.parity,
            primitive: self.primitive,
            conductor: self.conductor,
            index: self.index,
        }
    }

    /// Gauss sum `τ(χ) = Σ_n χ(n) e^{2πi n/q}`.
    pub fn gauss_sum(&self) -> C64 {
        let q = self.modulus;
        let mut s = C64::new(0.0, 0.0);
        for n in 0..q {
            let v = self.values[n as usize];
            if v.norm_sqr() != 0.0 {
                let ang = 2.0 * core::f64::consts::PI * n as f64 / q as f64;
                s += v * C64::new(ang.cos(), ang.sin());
            }
        }
        s
    }

    /// Root number `κ = τ(χ) / (i^a sqrt(q))` of a primitive character.
    pub fn root_number(&self) -> Result<C64> {
        if self.modulus == 1 {
            return Ok(C64::new(1.0, 0.0));
        }
        if !self.primitive {
            return Err(Error::Domain(format!(
                "root number requires a primitive character (mod {})",
                self.modulus
            )));
        }
        let denom = match self.parity {
            Parity::Even => C64::new((self.modulus as f64).sqrt(), 0.0),
            Parity::Odd => C64::new(0.0, (self.modulus as f64).sqrt()),
        };
        Ok(self.gauss_sum() / denom)
    }

    /// Gamma data of the (primitive) character as a degree-1 class member.
    pub fn gamma_data(&self) -> Result<GammaData> {
        let mu = match self.parity {
            Parity::Even => C64::new(0.0, 0.0),
            Parity::Odd => C64::new(1.0, 0.0),
        };
        let r = if self.modulus == 1 { 1 } else { 0 };
        GammaData::new(self.modulus, vec![mu], 1, r, self.root_number()?)
    }
}

/// The full character group mod `q`: generator data plus a canonical
/// enumeration of the characters.
pub struct CharacterGroup {
    pub modulus: u64,
    /// (lifted generator mod q, order) per cyclic component.
    components: Vec<(u64, u64)>,
    /// Exponent tuple of each unit, indexed by residue.
    dlog: Vec<Option<Vec<u32>>>,
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn euler_phi(n: u64) -> u64 {
    let mut out = n;
    for (p, _) in arith::factorize_trial(n) {
        out = out / p * (p - 1);
    }
    out
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (m as i64, (a % m) as i64);
    while new_r != 0 {
        let ql = r / new_r;
        (t, new_t) = (new_t, t - ql * new_t);
        (r, new_r) = (new_r, r - ql * new_r);
    }
    ((t % m as i64 + m as i64) % m as i64) as u64
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Multiplicative order of `g` mod `m`, given `φ(m)`.
fn order_mod(g: u64, m: u64, phi: u64) -> u64 {
    let mut ord = phi;
    for (p, _) in arith::factorize_trial(phi) {
        while ord % p == 0 && mod_pow(g, ord / p, m) == 1 {
            ord /= p;
        }
    }
    ord
}

fn primitive_root(pe: u64, phi: u64) -> Option<u64> {
    (2..pe).find(|&g| gcd(g, pe) == 1 && order_mod(g, pe, phi) == phi)
}

impl CharacterGroup {
    pub fn new(q: u64) -> Result<Self> {
        if q == 0 {
            return Err(Error::Domain("character group: modulus 0".into()));
        }
        let mut components: Vec<(u64, u64)> = Vec::new();
        for (p, e) in arith::factorize_trial(q) {
            let pe = p.pow(e);
            if p == 2 {
                match e {
                    1 => {}
                    2 => components.push((lift(3, pe, q), 2)),
                    _ => {
                        components.push((lift(pe - 1, pe, q), 2));
                        components.push((lift(3, pe, q), pe / 4));
                    }
                }
            } else {
                let phi = pe / p * (p - 1);
                let g = primitive_root(pe, phi)
                    .ok_or_else(|| Error::Data(format!("no primitive root mod {pe}")))?;
                components.push((lift(g, pe, q), phi));
            }
        }
        let phi = euler_phi(q);
        let mut dlog: Vec<Option<Vec<u32>>> = vec![None; q as usize];
        let k = components.len();
        let mut tuple = vec![0u32; k];
        for _ in 0..phi.max(1) {
            let mut r = 1u64 % q;
            for (i, &(g, _)) in components.iter().enumerate() {
                r = r * mod_pow(g, tuple[i] as u64, q) % q;
            }
            dlog[r as usize] = Some(tuple.clone());
            for i in 0..k {
                tuple[i] += 1;
                if (tuple[i] as u64) < components[i].1 {
                    break;
                }
                tuple[i] = 0;
            }
        }
        if q == 1 {
            dlog[0] = Some(Vec::new());
        }
        Ok(CharacterGroup {
            modulus: q,
            components,
            dlog,
        })
    }

    /// Number of characters, `φ(q)`.
    pub fn count(&self) -> usize {
        self.components.iter().map(|&(_, d)| d as usize).product()
    }

    /// The character with canonical index `i` (mixed-radix exponents over
    /// the cyclic components; index 0 is principal).
    pub fn character(&self, index: usize) -> Result<DirichletCharacter> {
        if index >= self.count() {
            return Err(Error::Domain(format!(
                "character index {index} out of range (φ = {})",
                self.count()
            )));
        }
        let q = self.modulus;
        let mut exps = Vec::with_capacity(self.components.len());
        let mut rem = index;
        for &(_, d) in &self.components {
            exps.push((rem % d as usize) as u64);
            rem /= d as usize;
        }
        let mut values = vec![C64::new(0.0, 0.0); q.max(1) as usize];
        for (r, t) in self.dlog.iter().enumerate() {
            if let Some(tuple) = t {
                // angle = Σ c_i t_i / d_i (mod 1)
                let mut ang = 0.0f64;
                for (i, &(_, d)) in self.components.iter().enumerate() {
                    ang += (exps[i] * tuple[i] as u64 % d) as f64 / d as f64;
                }
                let a = 2.0 * core::f64::consts::PI * ang;
                values[r] = C64::new(a.cos(), a.sin());
            }
        }
        if q == 1 {
            values[0] = C64::new(1.0, 0.0);
        }
        let parity = if q <= 2 || (values[(q - 1) as usize].re - 1.0).abs() < 1e-9 {
            Parity::Even
        } else {
            Parity::Odd
        };
        let conductor = conductor_of(q, &values);
        Ok(DirichletCharacter {
            modulus: q,
            values,
            parity,
            primitive: conductor == q,
            conductor,
            index,
        })
    }

    /// All primitive characters mod `q`, in canonical index order.
    pub fn primitive_characters(&self) -> Vec<DirichletCharacter> {
        (0..self.count())
            .filter_map(|i| self.character(i).ok())
            .filter(|c| c.primitive)
            .collect()
    }

    /// The canonical cyclic components as (generator mod q, order).
    pub fn generators(&self) -> &[(u64, u64)] {
        &self.components
    }

    /// Index of the character mapping each canonical generator `g_i` to
    /// `e^{2πi k_i/n_i}`; every `n_i` must divide the component order.
    pub fn index_from_images(&self, images: &[(u64, u64)]) -> Result<usize> {
        if images.len() != self.components.len() {
            return Err(Error::Data(format!(
                "expected {} generator images, got {}",
                self.components.len(),
                images.len()
            )));
        }
        let mut index = 0usize;
        let mut radix = 1usize;
        for (&(_, d), &(k, n)) in self.components.iter().zip(images.iter()) {
            if n == 0 || d % n != 0 {
                return Err(Error::Data(format!(
                    "image order {n} does not divide the component order {d}"
                )));
            }
            let c = (k % n) * (d / n);
            index += radix * c as usize;
            radix *= d as usize;
        }
        Ok(index)
    }
}

/// Parses a character selector: either `q,index` with the canonical index,
/// or `q;k1/n1;k2/n2;...` giving the image of each canonical generator as
/// the exponent of a root of unity. `#` comments and blanks are skipped.
pub fn parse_character_spec(text: &str) -> Result<(u64, usize)> {
    let line = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .ok_or_else(|| Error::Data("character spec: no content".into()))?;
    if line.contains(';') {
        let mut parts = line.split(';').map(str::trim);
        let q: u64 = parts
            .next()
            .unwrap()
            .parse()
            .map_err(|_| Error::Data("character spec: bad modulus".into()))?;
        let group = CharacterGroup::new(q)?;
        let images = parts
            .map(|p| {
                let mut kn = p.split('/');
                let k: u64 = kn
                    .next()
                    .unwrap()
                    .trim()
                    .parse()
                    .map_err(|_| Error::Data(format!("character spec: bad image {p}")))?;
                let n: u64 = kn
                    .next()
                    .ok_or_else(|| Error::Data(format!("character spec: image {p} needs k/n")))?
                    .trim()
                    .parse()
                    .map_err(|_| Error::Data(format!("character spec: bad image {p}")))?;
                Ok((k, n))
            })
            .collect::<Result<Vec<_>>>()?;
        let idx = group.index_from_images(&images)?;
        Ok((q, idx))
    } else {
        let mut parts = line.split(',').map(str::trim);
        let q: u64 = parts
            .next()
            .unwrap()
            .parse()
            .map_err(|_| Error::Data("character spec: bad modulus".into()))?;
        let idx: usize = parts
            .next()
            .ok_or_else(|| Error::Data("character spec: need q,index".into()))?
            .parse()
            .map_err(|_| Error::Data("character spec: bad index".into()))?;
        Ok((q, idx))
    }
}

/// The character as a degree-1 class member: inverse root `χ(p)` at every
/// prime not dividing the modulus, empty root list at ramified primes.
pub fn character_as_spec(
    chi: &DirichletCharacter,
    p_max: u64,
) -> Result<crate::lfunc::LFunctionSpec> {
    use crate::lfunc::{EulerData, LFunctionSpec, LocalRoots};
    let mut map = alloc::collections::BTreeMap::new();
    for p in arith::primes_up_to(p_max) {
        let v = chi.eval(p);
        let roots = if v.norm_sqr() == 0.0 {
            Vec::new()
        } else {
            alloc::vec![v]
        };
        map.insert(p, LocalRoots::new(p, roots)?);
    }
    LFunctionSpec::new(
        chi.gamma_data()?,
        EulerData::Table(map),
        p_max,
        format!("chi_{}_{}", chi.modulus, chi.index),
    )
}

fn lift(g: u64, pe: u64, q: u64) -> u64 {
    // CRT lift of g mod pe to a unit mod q that is 1 mod q/pe.
    let n = q / pe;
    if n == 1 {
        return g % q;
    }
    let x = (g % pe) * (n % q) % q * mod_inverse(n % pe, pe) % q;
    let y = (pe % q) * mod_inverse(pe % n, n) % q;
    (x + y) % q
}

fn conductor_of(q: u64, values: &[C64]) -> u64 {
    if q == 1 {
        return 1;
    }
    let mut divisors: Vec<u64> = (1..=q).filter(|d| q % d == 0).collect();
    divisors.sort_unstable();
    'outer: for &f in &divisors {
        for a in 1..q {
            if values[a as usize].norm_sqr() == 0.0 {
                continue;
            }
            for b in (a + 1)..q {
                if values[b as usize].norm_sqr() == 0.0 {
                    continue;
                }
                if (b - a) % f == 0 && (values[a as usize] - values[b as usize]).norm() > 1e-9 {
                    continue 'outer;
                }
            }
        }
        return f;
    }
    q
}

/// Bank of *regularized* Hurwitz values `ζ(s, a/q) − 1/(s−1)` for
/// `a = 1..q`, shared by every character of the modulus.
///
/// Character sums weight these with coefficients summing to zero (unless
/// principal), so the pole term is reinstated exactly once in
/// [`evaluate_l_from_bank`] instead of being cancelled numerically.
pub fn hurwitz_bank(q: u64, s: C64) -> Result<Vec<C64>> {
    (1..=q)
        .map(|a| hurwitz_zeta_reg(s, C64::new(a as f64 / q as f64, 0.0)))
        .collect()
}

/// `L(s, χ)` assembled from a precomputed regularized bank.
pub fn evaluate_l_from_bank(chi: &DirichletCharacter, s: C64, bank: &[C64]) -> C64 {
    let q = chi.modulus;
    let mut sum = C64::new(0.0, 0.0);
    let mut coprime = 0u64;
    for a in 1..=q {
        let v = chi.eval(a);
        if v.norm_sqr() != 0.0 {
            sum += v * bank[(a - 1) as usize];
            coprime += 1;
        }
    }
    if chi.is_principal() {
        // Σ_a χ(a) = φ(q): the pole survives with that weight.
        sum += coprime as f64 * (s - 1.0).inv();
    }
    (-s * (q as f64).ln()).exp() * sum
}

/// `L(s, χ)` on the whole plane via the Hurwitz decomposition.
///
/// The only pole is at `s = 1` for the principal character.
pub fn evaluate_l(chi: &DirichletCharacter, s: C64) -> Result<C64> {
    check_pole(chi, s)?;
    let bank = hurwitz_bank(chi.modulus, s)?;
    Ok(evaluate_l_from_bank(chi, s, &bank))
}

/// `L` and `L'` together, by differentiating the Hurwitz decomposition.
pub fn evaluate_l_jet(chi: &DirichletCharacter, s: C64) -> Result<(C64, C64)> {
    check_pole(chi, s)?;
    let q = chi.modulus;
    let lnq = (q as f64).ln();
    let mut sum = C64::new(0.0, 0.0);
    let mut dsum = C64::new(0.0, 0.0);
    let mut coprime = 0u64;
    for a in 1..=q {
        let v = chi.eval(a);
        if v.norm_sqr() != 0.0 {
            let (z, dz) = hurwitz_zeta_reg_jet(s, C64::new(a as f64 / q as f64, 0.0))?;
            sum += v * z;
            dsum += v * dz;
            coprime += 1;
        }
    }
    if chi.is_principal() {
        let inv = (s - 1.0).inv();
        sum += coprime as f64 * inv;
        dsum -= coprime as f64 * inv * inv;
    }
    let qs = (-s * lnq).exp();
    Ok((qs * sum, qs * (dsum - lnq * sum)))
}

fn check_pole(chi: &DirichletCharacter, s: C64) -> Result<()> {
    if chi.is_principal() && (s - C64::new(1.0, 0.0)).norm() < 1e-12 {
        return Err(Error::Pole(format!(
            "L(s, principal mod {}) has its pole at s = 1",
            chi.modulus
        )));
    }
    Ok(())
}

/// The completed function `Λ(s) = s^r (1-s)^r L(s) L_∞(s)` of a primitive
/// character (`r = 1` at modulus 1, else 0).
pub fn completed_l(chi: &DirichletCharacter, s: C64) -> Result<C64> {
    if chi.modulus > 1 && !chi.primitive {
        return Err(Error::Domain(format!(
            "completed L requires a primitive character (mod {})",
            chi.modulus
        )));
    }
    let g = chi.gamma_data()?;
    let l = evaluate_l(chi, s)?;
    let mu = g.mu[0];
    let lg = log_gamma((s + mu) / 2.0)?;
    let ln_inf = s / 2.0 * ((g.conductor as f64).ln() - LN_PI) + lg;
    let mut v = ln_inf.exp() * l;
    for _ in 0..g.pole_order {
        v *= s * (C64::new(1.0, 0.0) - s);
    }
    Ok(v)
}

/// Defect of the functional equation `Λ_χ(s) = κ Λ_χ̄(1-s)`, both sides
/// evaluated independently; normalized by the larger magnitude.
pub fn completed_symmetry_defect(chi: &DirichletCharacter, s: C64) -> Result<f64> {
    let lhs = completed_l(chi, s)?;
    let kappa = chi.root_number()?;
    let rhs = kappa * completed_l(&chi.conjugate(), C64::new(1.0, 0.0) - s)?;
    let scale = lhs.norm().max(rhs.norm()).max(1e-300);
    Ok((lhs - rhs).norm() / scale)
}

/// The rotated completed function on the critical line,
/// `Z(t) = Re(e^{-iθ} Λ(1/2 + it))` with `θ = arg(κ)/2`; real-valued for
/// every primitive character, so its sign changes locate zeros.
pub struct CriticalLine {
    chi: DirichletCharacter,
    rotation: C64,
}

impl CriticalLine {
    pub fn new(chi: &DirichletCharacter) -> Result<Self> {
        let kappa = chi.root_number()?;
        let theta = 0.5 * kappa.arg();
        Ok(CriticalLine {
            chi: chi.clone(),
            rotation: C64::new(0.0, -theta).exp(),
        })
    }

    pub fn character(&self) -> &DirichletCharacter {
        &self.chi
    }

    /// `(Re, Im)` of the rotated completed value at `1/2 + it`; the
    /// imaginary part should sit at rounding level.
    pub fn z(&self, t: f64) -> Result<(f64, f64)> {
        let v = self.rotation * completed_l(&self.chi, C64::new(0.5, t))?;
        Ok((v.re, v.im))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn chi4() -> DirichletCharacter {
        let g = CharacterGroup::new(4).unwrap();
        let c = g.character(1).unwrap();
        assert!(c.primitive);
        c
    }

    #[test]
    fn group_sizes() {
        for &(q, phi) in &[
            (1u64, 1usize),
            (2, 1),
            (3, 2),
            (4, 2),
            (8, 4),
            (12, 4),
            (45, 24),
            (200, 80),
        ] {
            let g = CharacterGroup::new(q).unwrap();
            assert_eq!(g.count(), phi, "phi({q})");
        }
    }

    #[test]
    fn characters_are_completely_multiplicative() {
        for q in [5u64, 8, 9, 12, 15, 16, 21, 24, 99] {
            let g = CharacterGroup::new(q).unwrap();
            for i in 0..g.count() {
                let c = g.character(i).unwrap();
                for a in 0..q {
                    for b in 0..q {
                        let lhs = c.eval(a * b);
                        let rhs = c.eval(a) * c.eval(b);
                        assert!((lhs - rhs).norm() < 1e-12, "q={q} i={i} a={a} b={b}");
                    }
                }
                for n in 1..q {
                    let m = c.eval(n).norm();
                    if gcd(n, q) == 1 {
                        assert!((m - 1.0).abs() < 1e-12);
                    } else {
                        assert_eq!(m, 0.0);
                    }
                }
            }
        }
    }

    #[test]
    fn orthogonality_row() {
        let g = CharacterGroup::new(35).unwrap();
        for i in 1..g.count() {
            let c = g.character(i).unwrap();
            let s: C64 = (0..35).map(|n| c.eval(n)).sum();
            assert!(s.norm() < 1e-10, "index {i}");
        }
    }

    #[test]
    fn primitive_counts_match_inclusion_exclusion() {
        for q in 2u64..=60 {
            let g = CharacterGroup::new(q).unwrap();
            let got = g.primitive_characters().len() as i64;
            let mut expected = 0i64;
            for d in 1..=q {
                if q % d == 0 {
                    let f = arith::factorize_trial(d);
                    if f.iter().all(|&(_, k)| k == 1) {
                        let mu = if f.len() % 2 == 0 { 1 } else { -1 };
                        expected += mu * euler_phi(q / d) as i64;
                    }
                }
            }
            assert_eq!(got, expected, "q = {q}");
        }
    }

    #[test]
    fn zeta_at_two_through_the_l_machinery() {
        let g = CharacterGroup::new(1).unwrap();
        let one = g.character(0).unwrap();
        let v = evaluate_l(&one, C64::new(2.0, 0.0)).unwrap();
        assert_abs_diff_eq!(v.re, core::f64::consts::PI.powi(2) / 6.0, epsilon = 1e-12);
    }

    #[test]
    fn chi4_at_one_is_leibniz() {
        let v = evaluate_l(&chi4(), C64::new(1.0, 0.0)).unwrap();
        assert_abs_diff_eq!(v.re, core::f64::consts::PI / 4.0, epsilon = 1e-12);
        assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-13);
    }

    #[test]
    fn catalan_value() {
        let v = evaluate_l(&chi4(), C64::new(2.0, 0.0)).unwrap();
        assert_abs_diff_eq!(v.re, 0.915_965_594_177_219, epsilon = 1e-12);
    }

    #[test]
    fn principal_pole_is_an_error() {
        let g = CharacterGroup::new(1).unwrap();
        let one = g.character(0).unwrap();
        assert!(matches!(
            evaluate_l(&one, C64::new(1.0, 0.0)),
            Err(Error::Pole(_))
        ));
    }

    #[test]
    fn bank_matches_single_evaluation() {
        let g = CharacterGroup::new(7).unwrap();
        let s = C64::new(0.5, 3.3);
        let bank = hurwitz_bank(7, s).unwrap();
        for i in 0..g.count() {
            let c = g.character(i).unwrap();
            let via_bank = evaluate_l_from_bank(&c, s, &bank);
            let direct = evaluate_l(&c, s).unwrap();
            assert!((via_bank - direct).norm() < 1e-13);
        }
    }

    #[test]
    fn jet_matches_difference_quotient() {
        let c = chi4();
        let s = C64::new(1.7, -2.0);
        let (_, dl) = evaluate_l_jet(&c, s).unwrap();
        let h = 1e-5;
        let fd = (evaluate_l(&c, s + h).unwrap() - evaluate_l(&c, s - h).unwrap()) / (2.0 * h);
        assert!((dl - fd).norm() < 1e-7);
    }

    #[test]
    fn dirichlet_series_agreement_at_two() {
        let s = C64::new(2.0, 0.0);
        let big = 1_000_000u64;
        for q in [3u64, 5, 11, 37, 50] {
            let g = CharacterGroup::new(q).unwrap();
            for i in 0..g.count().min(6) {
                let c = g.character(i).unwrap();
                let mut direct = C64::new(0.0, 0.0);
                let mut coprime = 0u64;
                for n in 1..=big {
                    let v = c.eval(n);
                    if v.norm_sqr() != 0.0 {
                        direct += v * (n as f64).powf(-2.0);
                        coprime += 1;
                    }
                }
                if c.is_principal() {
                    // Positive terms: integral tail at coprime density.
                    direct += C64::new(coprime as f64 / big as f64 / big as f64, 0.0);
                }
                let via_hurwitz = evaluate_l(&c, s).unwrap();
                assert!(
                    (direct - via_hurwitz).norm() < 1e-9,
                    "q={q} i={i}: {direct} vs {via_hurwitz}"
                );
            }
        }
    }

    #[test]
    fn root_numbers_are_unimodular() {
        for q in [3u64, 4, 5, 7, 8, 11, 12, 13, 16, 19, 40] {
            let g = CharacterGroup::new(q).unwrap();
            for c in g.primitive_characters() {
                let k = c.root_number().unwrap();
                assert!((k.norm() - 1.0).abs() < 1e-12, "q={q} index={}", c.index);
            }
        }
    }

    #[test]
    fn chi4_root_number_is_one() {
        let k = chi4().root_number().unwrap();
        assert!((k - C64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn zeta_completed_is_symmetric() {
        let g = CharacterGroup::new(1).unwrap();
        let one = g.character(0).unwrap();
        let s = C64::new(0.3, 2.0);
        let a = completed_l(&one, s).unwrap();
        let b = completed_l(&one, C64::new(1.0, 0.0) - s).unwrap();
        assert!((a - b).norm() < 1e-10 * a.norm().max(1.0));
    }

    #[test]
    fn functional_equation_defect_small() {
        let mut points = Vec::new();
        let mut x = 0.37f64;
        for _ in 0..20 {
            x = (x * 997.13).fract();
            points.push(C64::new(x, 8.0 * ((x * 631.7).fract() - 0.5)));
        }
        for (q, idx) in [(3u64, 1usize), (4, 1), (5, 1), (5, 2), (7, 2), (13, 5)] {
            let g = CharacterGroup::new(q).unwrap();
            let c = g.character(idx).unwrap();
            if !c.primitive {
                continue;
            }
            for s in &points {
                let d = completed_symmetry_defect(&c, *s).unwrap();
                assert!(d < 1e-8, "q={q} idx={idx} s={s}: defect {d}");
            }
        }
    }

    #[test]
    fn evaluation_contract_at_range_boundary() {
        // The stated accuracy envelope reaches q = 200 and |Im s| = 30;
        // probe the functional-equation defect near that corner.
        let g = CharacterGroup::new(199).unwrap();
        let c = g.character(1).unwrap();
        assert!(c.primitive);
        for &(re, im) in &[(0.4, 28.0), (0.5, 30.0), (0.9, -25.0)] {
            let d = completed_symmetry_defect(&c, C64::new(re, im)).unwrap();
            assert!(d < 1e-8, "s = {re}+{im}i: defect {d}");
        }
    }

    #[test]
    fn real_characters_give_real_z() {
        let line = CriticalLine::new(&chi4()).unwrap();
        for &t in &[0.0, 1.5, 6.02, 11.7] {
            let (_, im) = line.z(t).unwrap();
            assert!(im.abs() < 1e-10, "Im Z({t}) = {im}");
        }
    }

    #[test]
    fn complex_character_rotation_yields_real_z() {
        let g = CharacterGroup::new(5).unwrap();
        let c = g.character(1).unwrap();
        assert!(!c.is_real());
        let line = CriticalLine::new(&c).unwrap();
        for &t in &[-4.0, 0.3, 2.25, 9.9] {
            let (re, im) = line.z(t).unwrap();
            assert!(im.abs() < 1e-9 * re.abs().max(1e-12), "Im Z({t}) = {im}");
        }
    }
}
