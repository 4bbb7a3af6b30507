//! The Clifford algebra `cl(V, Q)` over the standard basis of `V`.
//!
//! Basis monomials are strictly increasing words `e_{i1} ... e_{ir}`, encoded
//! as bitmasks. Products are rewritten to this basis lazily using
//! `e_i e_i = Q(e_i)` and `e_i e_j + e_j e_i = f_Q(e_i, e_j)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::forms::QuadraticForm;
use crate::gf::Field;
use crate::linalg::Vector;

/// Strictly increasing index set, bit `i` standing for `e_{i+1}`.
pub type Monomial = u16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliffordElement {
    form: Arc<QuadraticForm>,
    coeffs: BTreeMap<Monomial, u32>,
}

impl CliffordElement {
    pub fn zero(form: &Arc<QuadraticForm>) -> Self {
        CliffordElement { form: form.clone(), coeffs: BTreeMap::new() }
    }

    pub fn one(form: &Arc<QuadraticForm>) -> Self {
        Self::monomial(form, 0, 1)
    }

    pub fn monomial(form: &Arc<QuadraticForm>, mono: Monomial, coeff: u32) -> Self {
        let mut e = Self::zero(form);
        e.add_term(mono, coeff);
        e
    }

    /// `sum v_i e_i`.
    pub fn embed_vector(form: &Arc<QuadraticForm>, v: &Vector) -> Result<Self> {
        if v.field() != form.field() {
            return Err(Error::FieldMismatch);
        }
        if v.len() != form.dim() {
            return Err(Error::ShapeMismatch(format!("vector of length {} for dimension {}", v.len(), form.dim())));
        }
        let mut e = Self::zero(form);
        for (i, &c) in v.indices().iter().enumerate() {
            e.add_term(1 << i, c);
        }
        Ok(e)
    }

    pub fn form(&self) -> &Arc<QuadraticForm> {
        &self.form
    }

    fn field(&self) -> Field {
        self.form.field()
    }

    /// Nonzero coefficients keyed by monomial.
    pub fn terms(&self) -> &BTreeMap<Monomial, u32> {
        &self.coeffs
    }

    /// Coefficient of a monomial given as an increasing list of 1-based indexes.
    pub fn coefficient(&self, indexes: &[usize]) -> u32 {
        let mono = indexes.iter().fold(0u16, |m, &i| m | 1 << (i - 1));
        self.coeffs.get(&mono).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The scalar `c * 1`, if the element is one.
    pub fn as_scalar(&self) -> Option<u32> {
        match self.coeffs.len() {
            0 => Some(0),
            1 => self.coeffs.get(&0).copied(),
            _ => None,
        }
    }

    fn add_term(&mut self, mono: Monomial, coeff: u32) {
        if coeff == 0 {
            return;
        }
        let f = self.field();
        let entry = self.coeffs.entry(mono).or_insert(0);
        *entry = f.add(*entry, coeff);
        if *entry == 0 {
            self.coeffs.remove(&mono);
        }
    }

    fn check(&self, other: &CliffordElement) -> Result<()> {
        if Arc::ptr_eq(&self.form, &other.form) || self.form == other.form {
            Ok(())
        } else {
            Err(Error::FormMismatch)
        }
    }

    pub fn add(&self, other: &CliffordElement) -> Result<CliffordElement> {
        self.check(other)?;
        let mut out = self.clone();
        for (&m, &c) in &other.coeffs {
            out.add_term(m, c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: u32) -> CliffordElement {
        let f = self.field();
        let mut out = Self::zero(&self.form);
        for (&m, &x) in &self.coeffs {
            out.add_term(m, f.mul(c, x));
        }
        out
    }

    /// Algebra product, rewritten to the increasing-monomial basis.
    pub fn mul(&self, other: &CliffordElement) -> Result<CliffordElement> {
        self.check(other)?;
        let f = self.field();
        let mut out = Self::zero(&self.form);
        for (&mb, &cb) in &other.coeffs {
            // self * e_{j1} * e_{j2} * ... for the generators of mb in order
            let mut acc: Vec<(Monomial, u32)> = self.coeffs.iter().map(|(&m, &c)| (m, f.mul(c, cb))).collect();
            let mut bits = mb;
            while bits != 0 {
                let j = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let mut next = Vec::new();
                for (m, c) in acc {
                    for (m2, c2) in right_mul_generator(&self.form, m, j) {
                        next.push((m2, f.mul(c, c2)));
                    }
                }
                acc = next;
            }
            for (m, c) in acc {
                out.add_term(m, c);
            }
        }
        Ok(out)
    }
}

/// `mono * e_j` as a combination of increasing monomials.
///
/// With `m` the largest generator of `mono`:
/// `m < j` appends, `m = j` contracts to `Q(e_j)`, and `m > j` uses
/// `e_m e_j = f_Q(e_m, e_j) - e_j e_m` to move `e_j` left.
fn right_mul_generator(form: &QuadraticForm, mono: Monomial, j: usize) -> Vec<(Monomial, u32)> {
    let f = form.field();
    if mono == 0 {
        return vec![(1 << j, 1)];
    }
    let m = 15 - mono.leading_zeros() as usize;
    if m < j {
        return vec![(mono | 1 << j, 1)];
    }
    let prefix = mono & !(1 << m);
    if m == j {
        return vec![(prefix, form.upper().at(j, j))];
    }
    let mut out = Vec::new();
    let pairing = form.upper().at(j, m);
    if pairing != 0 {
        out.push((prefix, pairing));
    }
    let minus_one = f.neg(1);
    for (t, c) in right_mul_generator(form, prefix, j) {
        // t only involves generators below m, so appending e_m keeps it increasing
        out.push((t | 1 << m, f.mul(minus_one, c)));
    }
    out
}

/// `2^n`, after checking that products of basis monomials stay inside the
/// span of the `2^n` increasing monomials and that each monomial is reached
/// as an ordered product of generators.
pub fn algebra_dimension(form: &Arc<QuadraticForm>) -> Result<usize> {
    let n = form.dim();
    if n > 12 {
        return Err(Error::DimensionTooLarge(n));
    }
    let size = 1usize << n;
    let table = multiplication_table(form)?;
    for row in &table {
        for prod in row {
            if prod.terms().keys().any(|&m| m as usize >= size) {
                return Err(Error::UnsupportedCombination("product left the monomial basis".into()));
            }
        }
    }
    // e_{i1} e_{i2} ... e_{ir} for increasing i's is exactly the monomial
    for mono in 0..size as Monomial {
        let mut acc = CliffordElement::one(form);
        let mut bits = mono;
        while bits != 0 {
            let j = bits.trailing_zeros();
            bits &= bits - 1;
            acc = acc.mul(&CliffordElement::monomial(form, 1 << j, 1))?;
        }
        if acc != CliffordElement::monomial(form, mono, 1) {
            return Err(Error::UnsupportedCombination("ordered generator product is not a basis monomial".into()));
        }
    }
    Ok(size)
}

/// All pairwise products of basis monomials, indexed by their bitmasks.
pub fn multiplication_table(form: &Arc<QuadraticForm>) -> Result<Vec<Vec<CliffordElement>>> {
    let size = 1usize << form.dim();
    let basis: Vec<CliffordElement> =
        (0..size).map(|m| CliffordElement::monomial(form, m as Monomial, 1)).collect();
    basis.iter().map(|a| basis.iter().map(|b| a.mul(b)).collect()).collect()
}
