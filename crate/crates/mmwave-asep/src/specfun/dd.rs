//! Minimal double-double ("dd") arithmetic: an unevaluated sum hi + lo of two
//! f64 giving ~31 significant digits. Used only to accumulate alternating
//! hypergeometric series whose terms cancel far beyond f64 precision.
//!
//! The primitives are the classical error-free transformations (TwoSum,
//! QuickTwoSum, TwoProd-via-FMA); the composite ops follow the usual
//! double-double algorithms.

/// Unevaluated f64 pair with |lo| ≤ ulp(hi)/2.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

/// Error-free sum: returns (s, e) with s = fl(a+b) and a+b = s+e exactly.
#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

/// Error-free sum assuming |a| ≥ |b|.
#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let e = b - (s - a);
    (s, e)
}

/// Error-free product via fused multiply-add.
#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let e = a.mul_add(b, -p);
    (p, e)
}

impl Dd {
    #[inline]
    pub fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    /// Exact f64 sum promoted to dd (useful for parameter shifts like a + k).
    #[inline]
    pub fn sum_of(a: f64, b: f64) -> Self {
        let (hi, lo) = two_sum(a, b);
        Dd { hi, lo }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn add(self, other: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, other.hi);
        let (t1, t2) = two_sum(self.lo, other.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn mul(self, other: Dd) -> Dd {
        let (p1, p2) = two_prod(self.hi, other.hi);
        let p2 = p2 + self.hi * other.lo + self.lo * other.hi;
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }

    /// Division by one long-division correction step — full dd accuracy.
    #[inline]
    pub fn div(self, other: Dd) -> Dd {
        let q1 = self.hi / other.hi;
        // r = self − q1·other, computed in dd
        let r = self.add(other.mul(Dd::from_f64(-q1)));
        let q2 = (r.hi + r.lo) / (other.hi + other.lo);
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }
    }
}
