//! Elements of `W = A ⊗ D` and of `A = F[G]`, with the brackets
//! `[t^a d, t^b d'] = t^{a+b}(φ(b,d)d' − φ(a,d')d)` and
//! `[t^a d, t^b] = φ(b,d) t^{a+b}`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::lattice::{DVector, GroupElem, Pairing, Splitting};

/// A finite sum `Σ t^a d_a`, keyed by lattice point; zero vectors are never stored.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct WittElem {
    terms: BTreeMap<GroupElem, DVector>,
}

/// A finite sum `Σ c_a t^a` in the group algebra.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct AElem {
    terms: BTreeMap<GroupElem, Scalar>,
}

impl WittElem {
    pub fn zero() -> Self {
        WittElem::default()
    }

    pub fn term(a: GroupElem, d: DVector) -> Self {
        let mut w = WittElem::zero();
        w.add_term(a, &d);
        w
    }

    /// `t^a d_j`.
    pub fn basis(a: GroupElem, j: usize, r: usize) -> Self {
        WittElem::term(a, DVector::basis(r, j))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GroupElem, &DVector)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, a: &GroupElem) -> Option<&DVector> {
        self.terms.get(a)
    }

    pub fn add_term(&mut self, a: GroupElem, d: &DVector) {
        self.add_scaled_term(a, &Scalar::from_int(1), d);
    }

    pub fn add_scaled_term(&mut self, a: GroupElem, c: &Scalar, d: &DVector) {
        if c.is_zero() || d.is_zero() {
            return;
        }
        match self.terms.get_mut(&a) {
            Some(v) => {
                v.add_scaled(c, d);
                if v.is_zero() {
                    self.terms.remove(&a);
                }
            }
            None => {
                self.terms.insert(a, d.scale(c));
            }
        }
    }

    pub fn add(&self, o: &WittElem) -> WittElem {
        let mut out = self.clone();
        for (a, d) in &o.terms {
            out.add_term(a.clone(), d);
        }
        out
    }

    pub fn sub(&self, o: &WittElem) -> WittElem {
        self.add(&o.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> WittElem {
        if c.is_zero() {
            return WittElem::zero();
        }
        WittElem { terms: self.terms.iter().map(|(a, d)| (a.clone(), d.scale(c))).collect() }
    }

    /// The Lie bracket, extended bilinearly.
    pub fn bracket(&self, o: &WittElem, p: &Pairing) -> WittElem {
        let mut out = WittElem::zero();
        for (a, d) in &self.terms {
            for (b, e) in &o.terms {
                let sum = a.add(b);
                // φ(b,d)·e − φ(a,e)·d
                out.add_scaled_term(sum.clone(), &p.pair(b, d), e);
                out.add_scaled_term(sum, &-p.pair(a, e), d);
            }
        }
        out
    }

    /// `[x, f]` for `f ∈ A`.
    pub fn bracket_a(&self, f: &AElem, p: &Pairing) -> AElem {
        let mut out = AElem::zero();
        for (a, d) in &self.terms {
            for (b, c) in &f.terms {
                out.add_term(a.add(b), &(&p.pair(b, d) * c));
            }
        }
        out
    }

    /// Splits into the parts of negative, zero and positive `a₀`-degree.
    pub fn tri_part(&self, split: &Splitting) -> (WittElem, WittElem, WittElem) {
        let (mut minus, mut zero, mut plus) = (WittElem::zero(), WittElem::zero(), WittElem::zero());
        for (a, d) in &self.terms {
            let target = match split.deg(a) {
                k if k < 0 => &mut minus,
                0 => &mut zero,
                _ => &mut plus,
            };
            target.terms.insert(a.clone(), d.clone());
        }
        (minus, zero, plus)
    }

    /// Parses `t^(a1,..,an)[c1,..,cr]` terms joined by `+`.
    pub fn parse(text: &str, m: u64) -> Result<WittElem> {
        let mut out = WittElem::zero();
        let t = text.trim();
        if t == "0" {
            return Ok(out);
        }
        let mut rest = t;
        let mut offset = 0;
        loop {
            let body = rest.trim_start();
            offset += rest.len() - body.len();
            let Some(after) = body.strip_prefix("t^") else {
                return Err(Error::parse(offset, "expected 't^'"));
            };
            let close = after.find(')').ok_or_else(|| Error::parse(offset, "unclosed lattice point"))?;
            let a = GroupElem::parse(&after[..=close]).map_err(|_| Error::parse(offset + 2, "bad lattice point"))?;
            let tail = &after[close + 1..];
            let open = tail.find('[').ok_or_else(|| Error::parse(offset, "expected '['"))?;
            let end = tail.find(']').ok_or_else(|| Error::parse(offset, "expected ']'"))?;
            let mut coords = Vec::new();
            for part in tail[open + 1..end].split(',') {
                coords.push(Scalar::parse(part.trim(), m)?);
            }
            out.add_term(a, &DVector(coords));
            let consumed = 2 + close + 1 + end + 1;
            offset += consumed;
            let next = body[consumed..].trim_start();
            if next.is_empty() {
                return Ok(out);
            }
            offset += body[consumed..].len() - next.len();
            let Some(n) = next.strip_prefix('+') else {
                return Err(Error::parse(offset, "expected '+'"));
            };
            offset += 1;
            rest = n;
        }
    }
}

impl fmt::Display for WittElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(a, d)| format!("t^{a}{d}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for WittElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl AElem {
    pub fn zero() -> Self {
        AElem::default()
    }

    pub fn monomial(a: GroupElem) -> Self {
        let mut f = AElem::zero();
        f.add_term(a, &Scalar::from_int(1));
        f
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GroupElem, &Scalar)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, a: GroupElem, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(a.clone()).or_insert_with(Scalar::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&a);
        }
    }

    pub fn add(&self, o: &AElem) -> AElem {
        let mut out = self.clone();
        for (a, c) in &o.terms {
            out.add_term(a.clone(), c);
        }
        out
    }

    pub fn sub(&self, o: &AElem) -> AElem {
        let mut out = self.clone();
        for (a, c) in &o.terms {
            out.add_term(a.clone(), &-c);
        }
        out
    }
}

impl fmt::Display for AElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(a, c)| format!("({c})t^{a}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for AElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(v: &[i64]) -> GroupElem {
        GroupElem(v.to_vec())
    }

    #[test]
    fn bracket_identity_pairing() {
        let p = Pairing::from_ints(&[&[1, 0], &[0, 1]]);
        let x = WittElem::basis(g(&[1, 0]), 1, 2);
        let y = WittElem::basis(g(&[0, 1]), 0, 2);
        let expect = WittElem::term(g(&[1, 1]), DVector(vec![Scalar::from_int(1), Scalar::from_int(-1)]));
        assert_eq!(x.bracket(&y, &p), expect);
        assert!(x.bracket(&x, &p).is_zero());
    }

    #[test]
    fn degree_zero_acts_by_weight() {
        let p = Pairing::from_ints(&[&[1, 2], &[0, 3]]);
        let d = DVector(vec![Scalar::from_int(2), Scalar::from_int(-1)]);
        let a = g(&[1, 1]);
        let e = DVector(vec![Scalar::from_int(1), Scalar::from_int(5)]);
        let lhs = WittElem::term(GroupElem::zero(2), d.clone()).bracket(&WittElem::term(a.clone(), e.clone()), &p);
        assert_eq!(lhs, WittElem::term(a.clone(), e).scale(&p.pair(&a, &d)));
    }

    #[test]
    fn bracket_with_functions() {
        let p = Pairing::from_ints(&[&[1, 0], &[0, 1]]);
        let x = WittElem::basis(g(&[1, 0]), 0, 2);
        assert!(x.bracket_a(&AElem::monomial(g(&[0, 1])), &p).is_zero());
        assert_eq!(x.bracket_a(&AElem::monomial(g(&[1, 0])), &p), AElem::monomial(g(&[2, 0])));
        let d = WittElem::basis(g(&[0, 0]), 0, 2);
        assert!(d.bracket_a(&AElem::monomial(g(&[0, 0])), &p).is_zero());
    }

    #[test]
    fn triangular_parts() {
        let s = Splitting::new(&g(&[0, 1])).unwrap();
        let d = DVector::basis(2, 0);
        let e = DVector::basis(2, 1);
        let x = WittElem::term(g(&[0, 1]), d.clone());
        assert_eq!(x.tri_part(&s), (WittElem::zero(), WittElem::zero(), x.clone()));
        let y = WittElem::term(g(&[3, 0]), d.clone());
        assert_eq!(y.tri_part(&s), (WittElem::zero(), y.clone(), WittElem::zero()));
        let z = WittElem::term(g(&[3, -1]), d.clone()).add(&WittElem::term(g(&[3, 0]), e.clone()));
        assert_eq!(
            z.tri_part(&s),
            (WittElem::term(g(&[3, -1]), d), WittElem::term(g(&[3, 0]), e), WittElem::zero())
        );
    }

    #[test]
    fn text_roundtrip() {
        let x = WittElem::parse("t^(1,0)[0,1] + t^(0,-2)[1/2,0+1s]", 2).unwrap();
        assert_eq!(x.len(), 2);
        assert_eq!(WittElem::parse(&x.to_string(), 2).unwrap(), x);
        assert_eq!(x.to_string(), "t^(0,-2)[1/2,0+1s] + t^(1,0)[0,1]");
        assert!(WittElem::parse("t(1,0)[0,1]", 2).is_err());
    }
}
