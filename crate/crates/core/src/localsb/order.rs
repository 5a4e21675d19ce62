use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::polyring::{cmp_revlex_tail, Monomial, Polynomial};

/// Negative-degree reverse-lexicographic order ("ds").
///
/// Lower total degree is larger, so `1` is the largest monomial; ties are
/// broken reverse-lexicographically along the ring's variable sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct LocalOrder;

impl LocalOrder {
    pub fn name(&self) -> &'static str {
        "ds"
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        if a.nvars() != b.nvars() {
            return Err(Error::RingMismatch);
        }
        Ok(cmp_ds(a, b))
    }

    /// Largest monomial of a nonzero polynomial under this order.
    pub fn leading_monomial<'a>(&self, p: &'a Polynomial) -> Option<&'a Monomial> {
        p.terms().map(|(m, _)| m).max_by(|a, b| cmp_ds(a, b))
    }

    /// Total degree minus the degree of the leading monomial.
    pub fn ecart(&self, p: &Polynomial) -> Result<u32> {
        let lead = self.leading_monomial(p).ok_or(Error::ZeroPolynomial)?;
        Ok(p.total_degree().expect("nonzero") - lead.degree())
    }
}

pub(crate) fn cmp_ds(a: &Monomial, b: &Monomial) -> Ordering {
    b.degree()
        .cmp(&a.degree())
        .then_with(|| cmp_revlex_tail(a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{integer, Ring};

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn one_is_largest() {
        let ord = LocalOrder;
        assert_eq!(ord.compare(&m(&[0, 0]), &m(&[1, 0])).unwrap(), Ordering::Greater);
        assert_eq!(ord.compare(&m(&[1, 0]), &m(&[0, 2])).unwrap(), Ordering::Greater);
        assert_eq!(ord.compare(&m(&[1, 0]), &m(&[1, 0])).unwrap(), Ordering::Equal);
        assert_eq!(ord.compare(&m(&[1, 0]), &m(&[0, 1])).unwrap(), Ordering::Greater);
        assert_eq!(
            ord.compare(&m(&[1, 0]), &m(&[1, 0, 0])),
            Err(Error::RingMismatch)
        );
    }

    #[test]
    fn ecart_examples() {
        let r = Ring::new(["x", "y"]).unwrap();
        let ord = LocalOrder;
        let p = Polynomial::from_int_terms(&r, &[(&[1, 0], 1), (&[3, 0], 1)]);
        assert_eq!(ord.ecart(&p).unwrap(), 2);
        assert_eq!(ord.leading_monomial(&p), Some(&m(&[1, 0])));
        let p = Polynomial::from_int_terms(&r, &[(&[2, 0], 1)]);
        assert_eq!(ord.ecart(&p).unwrap(), 0);
        let p = Polynomial::from_int_terms(&r, &[(&[0, 0], 1), (&[1, 0], 1), (&[2, 0], 1)]);
        assert_eq!(ord.ecart(&p).unwrap(), 2);
        assert_eq!(ord.ecart(&Polynomial::zero(&r)), Err(Error::ZeroPolynomial));
        assert_eq!(
            ord.ecart(&Polynomial::constant(&r, integer(3))).unwrap(),
            0
        );
    }
}
