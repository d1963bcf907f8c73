use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::rat::{format_rat, Rat};

/// Element of the cyclotomic field Q(ζ_m), stored as a polynomial in ζ_m of
/// degree below φ(m), reduced modulo the m-th cyclotomic polynomial.
#[derive(Clone, Debug)]
pub struct Cyc {
    conductor: u32,
    coeffs: Vec<Rat>,
}

fn poly_cache() -> &'static RwLock<HashMap<u32, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Coefficients of Φ_m, lowest degree first. Monic.
pub(crate) fn cyclotomic_poly(m: u32) -> Arc<Vec<i64>> {
    if let Some(p) = poly_cache().read().unwrap().get(&m) {
        return p.clone();
    }
    // x^m - 1 divided by Φ_d for every proper divisor d
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in 1..m {
        if m.is_multiple_of(d) {
            let div = cyclotomic_poly(d);
            num = exact_div(&num, &div);
        }
    }
    let p = Arc::new(num);
    poly_cache().write().unwrap().insert(m, p.clone());
    p
}

fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut q = vec![0i64; rem.len() - dd];
    for i in (0..q.len()).rev() {
        let c = rem[i + dd];
        q[i] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[i + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

fn reduce(m: u32, mut poly: Vec<Rat>) -> Vec<Rat> {
    let phi = cyclotomic_poly(m);
    let deg = phi.len() - 1;
    if poly.len() > deg {
        for i in (deg..poly.len()).rev() {
            let c = std::mem::replace(&mut poly[i], Rat::zero());
            if c.is_zero() {
                continue;
            }
            for (j, &pj) in phi.iter().enumerate().take(deg) {
                if pj != 0 {
                    poly[i - deg + j] -= &c * Rat::from_integer(BigInt::from(pj));
                }
            }
        }
    }
    poly.resize(deg, Rat::zero());
    poly
}

impl Cyc {
    pub fn zero() -> Self {
        Cyc::from_rat(Rat::zero())
    }

    pub fn one() -> Self {
        Cyc::from_rat(Rat::one())
    }

    /// Rationals live at conductor 1.
    pub fn from_rat(r: Rat) -> Self {
        Cyc {
            conductor: 1,
            coeffs: vec![r],
        }
    }

    pub fn from_int(n: i64) -> Self {
        Cyc::from_rat(Rat::from_integer(BigInt::from(n)))
    }

    /// ζ_m^k.
    pub fn zeta_pow(m: u32, k: i64) -> Self {
        assert!(m > 0, "conductor must be positive");
        let k = k.rem_euclid(m as i64) as usize;
        let mut poly = vec![Rat::zero(); k + 1];
        poly[k] = Rat::one();
        Cyc {
            conductor: m,
            coeffs: reduce(m, poly),
        }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Re-express in Q(ζ_l) for a multiple l of the conductor.
    pub fn lift(&self, l: u32) -> Self {
        assert!(l.is_multiple_of(self.conductor), "{l} is not a multiple of {}", self.conductor);
        if l == self.conductor {
            return self.clone();
        }
        let step = (l / self.conductor) as usize;
        let mut poly = vec![Rat::zero(); (self.coeffs.len().max(1) - 1) * step + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            poly[k * step] = c.clone();
        }
        Cyc {
            conductor: l,
            coeffs: reduce(l, poly),
        }
    }

    fn align(&self, other: &Cyc) -> (Cyc, Cyc) {
        let l = self.conductor.lcm(&other.conductor);
        (self.lift(l), other.lift(l))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Complex conjugation ζ ↦ ζ^{-1}.
    pub fn conj(&self) -> Self {
        let m = self.conductor as usize;
        let mut poly = vec![Rat::zero(); m.max(1)];
        for (k, c) in self.coeffs.iter().enumerate() {
            poly[(m - k) % m] += c;
        }
        Cyc {
            conductor: self.conductor,
            coeffs: reduce(self.conductor, poly),
        }
    }

    /// The value as a rational, if it is one.
    pub fn to_rat(&self) -> Option<Rat> {
        // the power basis 1, ζ, …, ζ^{φ(m)-1} contains 1, so rationals are
        // exactly the vectors supported on the constant term
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn scale(&self, r: &Rat) -> Self {
        Cyc {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Cyc::one(), |acc, _| &acc * self)
    }
}

impl PartialEq for Cyc {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.align(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyc {}

impl<'a> Add<&'a Cyc> for &'a Cyc {
    type Output = Cyc;
    fn add(self, rhs: &Cyc) -> Cyc {
        let (a, b) = self.align(rhs);
        Cyc {
            conductor: a.conductor,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
        }
    }
}

impl<'a> Sub<&'a Cyc> for &'a Cyc {
    type Output = Cyc;
    fn sub(self, rhs: &Cyc) -> Cyc {
        self + &(-rhs)
    }
}

impl Neg for &Cyc {
    type Output = Cyc;
    fn neg(self) -> Cyc {
        Cyc {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl<'a> Mul<&'a Cyc> for &'a Cyc {
    type Output = Cyc;
    fn mul(self, rhs: &Cyc) -> Cyc {
        let (a, b) = self.align(rhs);
        let mut poly = vec![Rat::zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                poly[i + j] += x * y;
            }
        }
        Cyc {
            conductor: a.conductor,
            coeffs: reduce(a.conductor, poly),
        }
    }
}

impl Add for Cyc {
    type Output = Cyc;
    fn add(self, rhs: Cyc) -> Cyc {
        &self + &rhs
    }
}

impl Mul for Cyc {
    type Output = Cyc;
    fn mul(self, rhs: Cyc) -> Cyc {
        &self * &rhs
    }
}

/// Written as `a+b*z+c*z^2` with `z = ζ_m`.
impl fmt::Display for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut s = format_rat(c);
            if !out.is_empty() && !s.starts_with('-') {
                out.push('+');
            }
            match k {
                0 => {}
                1 => s.push_str("*z"),
                _ => s.push_str(&format!("*z^{k}")),
            }
            out.push_str(&s);
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat::rat;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_poly(2), vec![1, 1]);
        assert_eq!(*cyclotomic_poly(3), vec![1, 1, 1]);
        assert_eq!(*cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_poly(12).len() - 1, 4);
    }

    #[test]
    fn roots_of_unity() {
        for m in 1..=12u32 {
            let z = Cyc::zeta_pow(m, 1);
            assert_eq!(z.pow(m), Cyc::one(), "zeta_{m}^{m}");
            let total = (0..m as i64).fold(Cyc::zero(), |acc, k| &acc + &Cyc::zeta_pow(m, k));
            if m > 1 {
                assert!(total.is_zero(), "sum of {m}-th roots");
            } else {
                assert_eq!(total, Cyc::one());
            }
        }
    }

    #[test]
    fn conjugation_and_mixed_conductors() {
        let z3 = Cyc::zeta_pow(3, 1);
        assert_eq!(z3.conj(), Cyc::zeta_pow(3, 2));
        assert_eq!(&z3 * &z3.conj(), Cyc::one());
        // ζ_6 = -ζ_3^2
        assert_eq!(Cyc::zeta_pow(6, 1), -&Cyc::zeta_pow(3, 2));
        // ζ_2 = -1 as a rational
        assert_eq!(Cyc::zeta_pow(2, 1).to_rat(), Some(rat(-1, 1)));
        let half = Cyc::from_rat(rat(1, 2));
        assert_eq!((&half + &half), Cyc::one());
        assert_eq!(format!("{}", &Cyc::from_int(2) + &z3), "2+1*z");
        assert_eq!(format!("{}", Cyc::zero()), "0");
    }
}
