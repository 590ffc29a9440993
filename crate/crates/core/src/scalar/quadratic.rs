use super::rational::Rational;

/// `a + b·√d` with `d ≥ 2` square-free and `b ≠ 0`.
///
/// Values with `b = 0` never appear inside a [`Scalar`](super::Scalar); the
/// tower constructors collapse them to rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadraticNumber {
    pub(crate) a: Rational,
    pub(crate) b: Rational,
    pub(crate) d: u64,
}

impl QuadraticNumber {
    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub(crate) fn add(&self, rhs: &Self) -> (Rational, Rational) {
        (&self.a + &rhs.a, &self.b + &rhs.b)
    }

    pub(crate) fn sub(&self, rhs: &Self) -> (Rational, Rational) {
        (&self.a - &rhs.a, &self.b - &rhs.b)
    }

    pub(crate) fn mul(&self, rhs: &Self) -> (Rational, Rational) {
        let d = Rational::from(self.d as i64);
        let a = &(&self.a * &rhs.a) + &(&(&self.b * &rhs.b) * &d);
        let b = &(&self.a * &rhs.b) + &(&self.b * &rhs.a);
        (a, b)
    }

    /// `a² - d·b²`, nonzero whenever the element is nonzero.
    pub(crate) fn norm(&self) -> Rational {
        &(&self.a * &self.a) - &(&(&self.b * &self.b) * &Rational::from(self.d as i64))
    }

    /// Inverse via the conjugate; `None` for zero.
    pub(crate) fn inv(&self) -> Option<(Rational, Rational)> {
        let n = self.norm().recip()?;
        Some((&self.a * &n, -&(&self.b * &n)))
    }

    pub(crate) fn sign(&self) -> i32 {
        let sa = self.a.signum();
        let sb = self.b.signum();
        if sb == 0 || sa == sb {
            return if sa == 0 { sb } else { sa };
        }
        if sa == 0 {
            return sb;
        }
        // opposite signs: compare a² with d·b²
        let n = self.norm().signum();
        if sa > 0 {
            n
        } else {
            -n
        }
    }
}
