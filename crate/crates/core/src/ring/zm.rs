use crate::error::{Error, Result};

/// The coefficient ring Z/m.
///
/// Residues are stored as `u64` values in `[0, m)`. Products go through
/// `u128`, so any modulus that fits in a `u64` is safe.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Zm {
    modulus: u64,
}

impl Zm {
    pub fn new(modulus: u64) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::InvalidModulus(modulus));
        }
        Ok(Self { modulus })
    }

    #[inline]
    pub fn modulus(self) -> u64 {
        self.modulus
    }

    #[inline]
    pub fn reduce(self, v: u64) -> u64 {
        v % self.modulus
    }

    pub fn reduce_signed(self, v: i64) -> u64 {
        v.rem_euclid(self.modulus as i64) as u64
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a as u128 + b as u128;
        (s % self.modulus as u128) as u64
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            self.modulus - (b - a)
        }
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.modulus - a
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.modulus as u128) as u64
    }

    /// `a + b*c`
    #[inline]
    pub fn mul_add(self, a: u64, b: u64, c: u64) -> u64 {
        ((a as u128 + b as u128 * c as u128) % self.modulus as u128) as u64
    }

    pub fn is_unit(self, a: u64) -> bool {
        gcd(a, self.modulus) == 1
    }

    pub fn inverse(self, a: u64) -> Option<u64> {
        let (g, x, _) = ext_gcd(a as i128, self.modulus as i128);
        (g == 1).then(|| x.rem_euclid(self.modulus as i128) as u64)
    }

    /// The canonical generator of the ideal `(a)`, i.e. `gcd(a, m)`.
    pub fn ideal_generator(self, a: u64) -> u64 {
        gcd(a, self.modulus)
    }

    /// Returns `(u, d)` with `u` a unit, `d = gcd(a, m)` and `u*a = d`.
    pub fn normalize(self, a: u64) -> (u64, u64) {
        let m = self.modulus;
        let d = gcd(a, m);
        if a == 0 {
            return (1, 0);
        }
        let (ad, md) = (a / d, m / d);
        // ad is invertible modulo md; lift the inverse to a unit modulo m.
        let base = if md == 1 {
            0
        } else {
            let (_, x, _) = ext_gcd(ad as i128, md as i128);
            x.rem_euclid(md as i128) as u64
        };
        let mut u = base;
        for _ in 0..d {
            if gcd(u, m) == 1 {
                debug_assert_eq!(self.mul(u, a), d % m);
                return (u, d);
            }
            u += md;
        }
        unreachable!("no unit lift for {a} modulo {m}")
    }

    pub fn elements(self) -> impl Iterator<Item = u64> {
        0..self.modulus
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Extended Euclid: returns `(g, x, y)` with `x*a + y*b = g >= 0`.
pub(crate) fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}
