use std::collections::VecDeque;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use indexmap::IndexSet;
use rayon::prelude::*;

use super::order::estimated_order;
use super::{group_kind_of, GroupKind, Isometry};
use crate::error::{Error, Result};
use crate::forms::{classify, Form};
use crate::linalg::{dot_raw, Matrix, Vector};

/// Default cap on enumerated elements.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Group elements in a deterministic order, with constant-time lookup of an
/// element's position.
#[derive(Debug, Clone, Default)]
pub struct ElementSet {
    elems: IndexSet<Matrix>,
}

impl ElementSet {
    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Matrix> {
        self.elems.iter()
    }

    pub fn get(&self, i: usize) -> Option<&Matrix> {
        self.elems.get_index(i)
    }

    pub fn index_of(&self, m: &Matrix) -> Option<usize> {
        self.elems.get_index_of(m)
    }

    pub fn contains(&self, m: &Matrix) -> bool {
        self.elems.contains(m)
    }

    /// Same elements, ignoring order.
    pub fn set_eq(&self, other: &ElementSet) -> bool {
        self.len() == other.len() && self.iter().all(|m| other.contains(m))
    }

    /// Position of `a * b`; panics if the product is outside the set.
    pub fn product_index(&self, a: usize, b: usize) -> usize {
        let m = self.elems[a].mul_unchecked(&self.elems[b]);
        self.index_of(&m).expect("set is closed under products")
    }
}

impl FromIterator<Matrix> for ElementSet {
    fn from_iter<I: IntoIterator<Item = Matrix>>(iter: I) -> Self {
        ElementSet { elems: iter.into_iter().collect() }
    }
}

impl<'a> IntoIterator for &'a ElementSet {
    type Item = &'a Matrix;
    type IntoIter = indexmap::set::Iter<'a, Matrix>;
    fn into_iter(self) -> Self::IntoIter {
        self.elems.iter()
    }
}

/// Column-by-column search for isometries: the image of `e_i` must have the
/// norm of `e_i` and the right pairing with the images already chosen.
struct Search {
    n: usize,
    vectors: Vec<Vec<u32>>,
    /// candidates for each column, by index into `vectors`
    buckets: Vec<Vec<u32>>,
    /// Gram matrix of the pairing checked between columns
    gram: Matrix,
    /// targets `gram[j][i]` for `j < i`
    targets: Matrix,
    both_orders: bool,
}

impl Search {
    fn new(form: &Form) -> Self {
        let field = form.field();
        let n = form.dim();
        let total = (field.order() as u64).pow(n as u32);
        let vectors: Vec<Vec<u32>> = (1..total).map(|r| Vector::from_rank(field, n, r).indices().to_vec()).collect();
        let norms: Vec<u32> = vectors.iter().map(|v| form.norm_raw(v)).collect();
        let basis_norms: Vec<u32> = (0..n).map(|i| form.norm_raw(Vector::basis(field, n, i).indices())).collect();
        let buckets = basis_norms
            .iter()
            .map(|&t| (0..vectors.len() as u32).filter(|&k| norms[k as usize] == t).collect())
            .collect();
        let gram = form.bilinear().gram().clone();
        let p = form.bilinear().predicates();
        Search { n, vectors, buckets, targets: gram.clone(), gram, both_orders: !(p.symmetric || p.antisymmetric) }
    }

    /// Row functional `x -> f(w, x)` and `x -> f(x, w)`.
    fn functionals(&self, w: &[u32]) -> (Vec<u32>, Vec<u32>) {
        let field = self.gram.field();
        let n = self.n;
        let left = (0..n).map(|k| (0..n).fold(0, |a, l| field.add(a, field.mul(w[l], self.gram.at(l, k))))).collect();
        let right = (0..n).map(|k| (0..n).fold(0, |a, l| field.add(a, field.mul(self.gram.at(k, l), w[l])))).collect();
        (left, right)
    }

    fn run(
        &self,
        chosen: &mut Vec<u32>,
        funcs: &mut Vec<(Vec<u32>, Vec<u32>)>,
        out: &mut Vec<Matrix>,
        count: &AtomicU64,
        budget: u64,
    ) -> Result<()> {
        let i = chosen.len();
        let field = self.gram.field();
        if i == self.n {
            let cols: Vec<Vector> = chosen.iter().map(|&k| Vector::from_raw(field, self.vectors[k as usize].clone())).collect();
            let m = Matrix::from_columns(field, &cols).expect("consistent shapes");
            if m.rank() != self.n {
                return Ok(());
            }
            if count.fetch_add(1, Ordering::Relaxed) + 1 > budget {
                return Err(Error::BudgetExceeded { what: "group elements".into(), budget });
            }
            out.push(m);
            return Ok(());
        }
        for &k in &self.buckets[i] {
            let v = &self.vectors[k as usize];
            let ok = funcs.iter().enumerate().all(|(j, (left, right))| {
                dot_raw(field, left, v) == self.targets.at(j, i)
                    && (!self.both_orders || dot_raw(field, right, v) == self.targets.at(i, j))
            });
            if !ok {
                continue;
            }
            chosen.push(k);
            funcs.push(self.functionals(v));
            let r = self.run(chosen, funcs, out, count, budget);
            chosen.pop();
            funcs.pop();
            r?;
        }
        Ok(())
    }
}

/// All isometries of `form`, in the order of a column-by-column search over
/// vectors in scan order, provided there are at most `budget` of them.
///
/// Errors before searching when the expected order already exceeds the budget.
pub fn enumerate_group(form: &Form, budget: u64) -> Result<ElementSet> {
    let kind = group_kind_of(form)?;
    let tag = match kind {
        GroupKind::Orthogonal => Some(classify(form)?.type_tag),
        GroupKind::Symplectic => None,
    };
    let est = estimated_order(kind, tag, form.dim(), form.field());
    if est > budget as u128 {
        return Err(Error::BudgetExceeded { what: format!("group of order about {est}"), budget });
    }
    enumerate_group_with(form, budget)
}

/// [`enumerate_group`] without the form preconditions or the up-front order
/// estimate: any form, any budget, counted while searching.
pub fn enumerate_group_with(form: &Form, budget: u64) -> Result<ElementSet> {
    let search = Search::new(form);
    let count = AtomicU64::new(0);
    if search.n == 0 {
        return Ok(std::iter::once(Matrix::identity(form.field(), 0)).collect());
    }
    let parts: Vec<Result<Vec<Matrix>>> = search.buckets[0]
        .par_iter()
        .map(|&k| {
            let mut out = Vec::new();
            let mut chosen = vec![k];
            let mut funcs = vec![search.functionals(&search.vectors[k as usize])];
            search.run(&mut chosen, &mut funcs, &mut out, &count, budget)?;
            Ok(out)
        })
        .collect();
    let mut all = Vec::new();
    for p in parts {
        all.extend(p?);
    }
    Ok(all.into_iter().collect())
}

/// Closure of `gens` under multiplication, breadth first from the identity.
pub fn subgroup_generated(gens: &[Isometry], budget: u64) -> Result<ElementSet> {
    let Some(first) = gens.first() else {
        return Err(Error::UnsupportedCombination("empty generating set".into()));
    };
    let form: &Arc<Form> = first.form();
    if gens.iter().any(|g| !(Arc::ptr_eq(g.form(), form) || g.form() == form)) {
        return Err(Error::FormMismatch);
    }
    let mats: Vec<&Matrix> = gens.iter().map(|g| g.matrix()).collect();
    Ok(ElementSet { elems: closure(Matrix::identity(form.field(), form.dim()), &mats, budget)? })
}

pub(crate) fn closure(identity: Matrix, gens: &[&Matrix], budget: u64) -> Result<IndexSet<Matrix>> {
    let mut set = IndexSet::new();
    set.insert(identity.clone());
    let mut queue = VecDeque::from([identity]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.mul_unchecked(g);
            if !set.contains(&y) {
                if set.len() as u64 >= budget {
                    return Err(Error::BudgetExceeded { what: "generated subgroup".into(), budget });
                }
                set.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{standard_form, BilinearForm, TypeTag};
    use crate::gf::make_field;
    use crate::groups::is_isometry;

    /// Oracle: test every invertible matrix.
    fn brute(form: &Form) -> usize {
        let f = form.field();
        let n = form.dim();
        let q = f.order() as u64;
        let total = q.pow((n * n) as u32);
        (0..total)
            .filter(|&r| {
                let v = Vector::from_rank(f, n * n, r);
                let rows: Vec<Vec<u32>> = v.indices().chunks(n).map(|c| c.to_vec()).collect();
                let m = Matrix::from_index_rows(f, &rows).unwrap();
                is_isometry(&m, form).unwrap()
            })
            .count()
    }

    #[test]
    fn small_orders_match_brute_force() {
        let cases: Vec<(Form, usize)> = vec![
            (standard_form(make_field(2, 1).unwrap(), 2, TypeTag::Plus).unwrap(), 2),
            (standard_form(make_field(2, 1).unwrap(), 2, TypeTag::Minus).unwrap(), 6),
            (standard_form(make_field(3, 1).unwrap(), 2, TypeTag::Minus).unwrap(), 8),
            (standard_form(make_field(3, 1).unwrap(), 2, TypeTag::Plus).unwrap(), 4),
            (standard_form(make_field(2, 1).unwrap(), 3, TypeTag::OddDim).unwrap(), 6),
            (standard_form(make_field(3, 1).unwrap(), 3, TypeTag::OddDim).unwrap(), 48),
            (standard_form(make_field(2, 2).unwrap(), 2, TypeTag::Minus).unwrap(), 10),
            (standard_form(make_field(5, 1).unwrap(), 2, TypeTag::Plus).unwrap(), 8),
        ];
        for (form, expected) in cases {
            let e = enumerate_group(&form, 1_000_000).unwrap();
            assert_eq!(e.len(), expected, "{form:?}");
            if form.dim() * form.dim() * (form.field().order() as usize).ilog2() as usize <= 20 {
                assert_eq!(brute(&form), expected);
            }
            for m in &e {
                assert!(is_isometry(m, &form).unwrap());
            }
        }
    }

    #[test]
    fn sp_orders() {
        for (p, k, n, expected) in [(2u64, 1u32, 2usize, 6usize), (2, 2, 2, 60), (3, 1, 2, 24), (2, 1, 4, 720)] {
            let f = make_field(p, k).unwrap();
            let mut g = Matrix::zeros(f, n, n);
            for i in 0..n / 2 {
                g.set(i, n / 2 + i, 1);
                g.set(n / 2 + i, i, f.neg(1));
            }
            let form = Form::Bilinear(BilinearForm::new(g).unwrap());
            assert_eq!(enumerate_group(&form, 1_000_000).unwrap().len(), expected);
        }
    }

    #[test]
    fn deterministic_and_budgeted() {
        let form = standard_form(make_field(3, 1).unwrap(), 3, TypeTag::OddDim).unwrap();
        let a = enumerate_group(&form, 1000).unwrap();
        let b = enumerate_group(&form, 1000).unwrap();
        assert!(a.iter().eq(b.iter()));
        assert!(matches!(enumerate_group(&form, 47), Err(Error::BudgetExceeded { .. })));
        assert!(matches!(enumerate_group_with(&form, 47), Err(Error::BudgetExceeded { .. })));
        let big = standard_form(make_field(3, 1).unwrap(), 8, TypeTag::Plus).unwrap();
        assert!(matches!(enumerate_group(&big, 1_000_000), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn closure_of_full_group_is_itself() {
        let form = Arc::new(standard_form(make_field(2, 1).unwrap(), 4, TypeTag::Minus).unwrap());
        let all = enumerate_group(&form, 1000).unwrap();
        let gens: Vec<Isometry> = all.iter().take(40).map(|m| Isometry::trusted(form.clone(), m.clone())).collect();
        let c = subgroup_generated(&gens, 1000).unwrap();
        assert!(c.len() <= all.len());
        assert!(c.iter().all(|m| all.contains(m)));
        assert!(matches!(subgroup_generated(&gens, 3), Err(Error::BudgetExceeded { .. })));
    }
}
