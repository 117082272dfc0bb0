//! Finite matrix groups over cyclotomic fields: closure, Cayley tables and
//! subgroup enumeration. Trace series and their consequences live in
//! [`trace`].

pub mod trace;

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::OnceLock;

use num_rational::BigRational;
use num_traits::Zero;

use crate::cyclo::arith::lcm_all;
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::linalg::Matrix;

pub use trace::{
    classical_bireflection_rank, classify_pole, generated_by_quasi_bireflections, hdet, molien,
    trace_char_poly, PoleClass, PoleVerdict, Provenance, QbGeneration, TraceAssignment,
};

pub type CyclotomicMatrix = Matrix<Cyclotomic>;

/// Largest group accepted by [`subgroups`].
pub const SUBGROUP_LIMIT: usize = 64;

type Key = Vec<Vec<BigRational>>;

fn matrix_key(m: &CyclotomicMatrix, order: usize) -> Key {
    m.entries().iter().map(|c| c.coords_in(order)).collect()
}

fn common_order<'a>(mats: impl IntoIterator<Item = &'a CyclotomicMatrix>) -> usize {
    lcm_all(mats.into_iter().flat_map(|m| m.entries().iter().map(Cyclotomic::order)))
}

/// A finite group of invertible matrices, stored as its element list with
/// the identity first.
#[derive(Clone, Debug)]
pub struct FiniteMatrixGroup {
    dim: usize,
    zeta_order: usize,
    elements: Vec<CyclotomicMatrix>,
    generators: Vec<usize>,
    index: HashMap<Key, usize>,
    table: OnceLock<Vec<Vec<usize>>>,
}

/// Breadth-first closure of `gens` under multiplication. Fails with
/// [`Error::CapExceeded`] once more than `cap` elements are found.
pub fn closure(gens: &[CyclotomicMatrix], dim: usize, cap: usize) -> Result<FiniteMatrixGroup> {
    for g in gens {
        if !g.is_square() || g.rows() != dim {
            return Err(Error::DimensionMismatch(format!(
                "generator is {}x{}, expected {dim}x{dim}",
                g.rows(),
                g.cols()
            )));
        }
        if g.determinant().is_zero() {
            return Err(Error::Invalid("generator is singular".into()));
        }
    }
    let zeta_order = common_order(gens);
    let mut elements = vec![CyclotomicMatrix::identity(dim)];
    let mut index = HashMap::from([(matrix_key(&elements[0], zeta_order), 0)]);
    let mut generators = Vec::new();
    for g in gens {
        let key = matrix_key(g, zeta_order);
        let i = match index.get(&key) {
            Some(&i) => i,
            None => {
                elements.push(g.clone());
                index.insert(key, elements.len() - 1);
                elements.len() - 1
            }
        };
        if !generators.contains(&i) && i != 0 {
            generators.push(i);
        }
    }
    if elements.len() > cap {
        return Err(Error::CapExceeded { cap });
    }
    // Right-multiplying by generators reaches every element of a finite
    // group, since inverses are positive powers.
    let mut queue: VecDeque<usize> = (0..elements.len()).collect();
    while let Some(i) = queue.pop_front() {
        for &gi in &generators {
            let p = &elements[i] * &elements[gi];
            let key = matrix_key(&p, zeta_order);
            if !index.contains_key(&key) {
                elements.push(p);
                index.insert(key, elements.len() - 1);
                if elements.len() > cap {
                    return Err(Error::CapExceeded { cap });
                }
                queue.push_back(elements.len() - 1);
            }
        }
    }
    Ok(FiniteMatrixGroup { dim, zeta_order, elements, generators, index, table: OnceLock::new() })
}

impl FiniteMatrixGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `N` such that every entry lies in ℚ(ζ_N).
    pub fn zeta_order(&self) -> usize {
        self.zeta_order
    }

    pub fn elements(&self) -> &[CyclotomicMatrix] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &CyclotomicMatrix {
        &self.elements[i]
    }

    /// Indices of the generators within [`Self::elements`].
    pub fn generator_indices(&self) -> &[usize] {
        &self.generators
    }

    pub fn generators(&self) -> Vec<CyclotomicMatrix> {
        self.generators.iter().map(|&i| self.elements[i].clone()).collect()
    }

    pub fn index_of(&self, m: &CyclotomicMatrix) -> Option<usize> {
        if m.rows() != self.dim || m.cols() != self.dim {
            return None;
        }
        let order = self.zeta_order.max(1);
        let lifted = common_order([m]);
        if order % lifted != 0 {
            return None;
        }
        self.index.get(&matrix_key(m, order)).copied()
    }

    pub fn contains(&self, m: &CyclotomicMatrix) -> bool {
        self.index_of(m).is_some()
    }

    /// `table[i][j]` is the index of `elements[i] · elements[j]`.
    pub fn cayley_table(&self) -> &[Vec<usize>] {
        self.table.get_or_init(|| {
            self.elements
                .iter()
                .map(|a| {
                    self.elements
                        .iter()
                        .map(|b| self.index[&matrix_key(&(a * b), self.zeta_order)])
                        .collect()
                })
                .collect()
        })
    }

    pub fn product(&self, i: usize, j: usize) -> usize {
        self.cayley_table()[i][j]
    }

    pub fn inverse(&self, i: usize) -> usize {
        let row = &self.cayley_table()[i];
        row.iter().position(|&k| k == 0).expect("group elements are invertible")
    }

    pub fn element_order(&self, i: usize) -> usize {
        let mut k = 1;
        let mut cur = i;
        while cur != 0 {
            cur = self.product(cur, i);
            k += 1;
        }
        k
    }

    /// Indices of the subgroup generated by the given elements, sorted.
    pub fn generated_indices(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut members = vec![0];
        let mut queue = VecDeque::from([0]);
        while let Some(i) = queue.pop_front() {
            for &g in gens {
                let p = self.product(i, g);
                if !seen[p] {
                    seen[p] = true;
                    members.push(p);
                    queue.push_back(p);
                }
            }
        }
        members.sort_unstable();
        members
    }

    /// The subgroup on the given element indices, which must be closed and
    /// contain the identity.
    pub fn subgroup(&self, members: &[usize], gens: &[usize]) -> FiniteMatrixGroup {
        let mut ordered: Vec<usize> = vec![0];
        ordered.extend(members.iter().copied().filter(|&i| i != 0));
        let elements: Vec<CyclotomicMatrix> = ordered.iter().map(|&i| self.elements[i].clone()).collect();
        let index = elements
            .iter()
            .enumerate()
            .map(|(k, m)| (matrix_key(m, self.zeta_order), k))
            .collect();
        let generators = gens
            .iter()
            .map(|g| ordered.iter().position(|x| x == g).expect("generator lies in the subgroup"))
            .collect();
        FiniteMatrixGroup {
            dim: self.dim,
            zeta_order: self.zeta_order,
            elements,
            generators,
            index,
            table: OnceLock::new(),
        }
    }

    /// Greedy generating set for the subgroup on `members`.
    fn greedy_generators(&self, members: &[usize]) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![0];
        let mut by_order: Vec<usize> = members.iter().copied().filter(|&i| i != 0).collect();
        by_order.sort_by_key(|&i| (std::cmp::Reverse(self.element_order(i)), i));
        for i in by_order {
            if span.binary_search(&i).is_err() {
                gens.push(i);
                span = self.generated_indices(&gens);
            }
        }
        gens
    }
}

/// Closure of `mask ∪ {g}` as a bitmask subgroup.
fn extend_mask(table: &[Vec<usize>], mask: u64, g: usize) -> u64 {
    let mut out = mask | (1 << g);
    loop {
        let mut next = out;
        let members: Vec<usize> = (0..table.len()).filter(|&i| out >> i & 1 == 1).collect();
        for &a in &members {
            for &b in &members {
                next |= 1 << table[a][b];
            }
        }
        if next == out {
            return out;
        }
        out = next;
    }
}

/// Every subgroup as an element bitmask, by the cyclic-extension method:
/// start from the cyclic subgroups and adjoin one element at a time until
/// nothing new appears.
pub fn subgroup_masks(g: &FiniteMatrixGroup) -> Result<Vec<u64>> {
    if g.order() > SUBGROUP_LIMIT {
        return Err(Error::TooLarge { order: g.order(), limit: SUBGROUP_LIMIT });
    }
    let table = g.cayley_table();
    let mut found: BTreeSet<u64> = BTreeSet::from([1]);
    let mut frontier: Vec<u64> = Vec::new();
    for i in 1..g.order() {
        let m = extend_mask(table, 1, i);
        if found.insert(m) {
            frontier.push(m);
        }
    }
    while let Some(h) = frontier.pop() {
        for i in 0..g.order() {
            if h >> i & 1 == 0 {
                let m = extend_mask(table, h, i);
                if found.insert(m) {
                    frontier.push(m);
                }
            }
        }
    }
    let mut masks: Vec<u64> = found.into_iter().collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    Ok(masks)
}

/// All subgroups, smallest first, each with a greedy generating set.
pub fn subgroups(g: &FiniteMatrixGroup) -> Result<Vec<FiniteMatrixGroup>> {
    Ok(subgroup_masks(g)?
        .into_iter()
        .map(|mask| {
            let members: Vec<usize> = (0..g.order()).filter(|&i| mask >> i & 1 == 1).collect();
            let gens = g.greedy_generators(&members);
            g.subgroup(&members, &gens)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, Field};

    fn z(k: i64) -> Cyclotomic {
        Cyclotomic::zeta(3, k)
    }

    fn c(n: i64) -> Cyclotomic {
        Cyclotomic::from_i64(n)
    }

    pub(crate) fn sklyanin_generators() -> Vec<CyclotomicMatrix> {
        let g1 = Matrix::diagonal(&[z(1), z(2), c(1)]);
        let g2 = Matrix::from_rows(vec![vec![c(0), c(1), c(0)], vec![c(0), c(0), c(1)], vec![c(1), c(0), c(0)]]);
        let g3 = Matrix::from_rows(vec![vec![c(0), c(0), c(1)], vec![c(1), c(0), c(0)], vec![c(0), c(1), c(0)]]);
        vec![g1, g2, g3]
    }

    fn quarter_turn() -> CyclotomicMatrix {
        Matrix::from_rows(vec![vec![c(0), c(-1), c(0)], vec![c(1), c(0), c(0)], vec![c(0), c(0), c(-1)]])
    }

    #[test]
    fn sklyanin_order() {
        let g = closure(&sklyanin_generators(), 3, 100).unwrap();
        assert_eq!(g.order(), 27);
        assert_eq!(g.zeta_order(), 3);
        assert!((1..27).all(|i| g.element_order(i) == 3));
    }

    #[test]
    fn cyclic_of_order_four() {
        let g = closure(&[quarter_turn()], 3, 10).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.element_order(1), 4);
    }

    #[test]
    fn trivial_group() {
        let g = closure(&[], 2, 1).unwrap();
        assert_eq!(g.order(), 1);
        assert!(g.element(0).is_identity());
    }

    #[test]
    fn cap_and_dimension_errors() {
        assert_eq!(closure(&sklyanin_generators(), 3, 10).unwrap_err(), Error::CapExceeded { cap: 10 });
        let scale = Matrix::diagonal(&[c(2)]);
        assert!(matches!(closure(&[scale.clone()], 1, 50), Err(Error::CapExceeded { .. })));
        assert!(matches!(closure(&[scale], 2, 50), Err(Error::DimensionMismatch(_))));
        let singular = Matrix::diagonal(&[c(0), c(1)]);
        assert!(closure(&[singular], 2, 50).is_err());
    }

    #[test]
    fn mixed_orders_lift() {
        // i and ω together generate the cyclic group of order 12
        let g = Matrix::diagonal(&[Cyclotomic::zeta(4, 1)]);
        let h = Matrix::diagonal(&[Cyclotomic::zeta(3, 1)]);
        let grp = closure(&[g, h], 1, 100).unwrap();
        assert_eq!(grp.order(), 12);
        assert_eq!(grp.zeta_order(), 12);
        let probe = Matrix::diagonal(&[Cyclotomic::zeta(6, 1)]);
        assert!(grp.contains(&probe));
        assert!(!grp.contains(&Matrix::diagonal(&[Cyclotomic::rational(int(2))])));
    }

    #[test]
    fn inverses_and_table() {
        let g = closure(&sklyanin_generators(), 3, 100).unwrap();
        for i in 0..g.order() {
            let j = g.inverse(i);
            assert!((g.element(i) * g.element(j)).is_identity());
        }
    }

    #[test]
    fn cyclic_three_has_two_subgroups() {
        let gen = Matrix::diagonal(&[z(1), z(2), c(1)]);
        let g = closure(&[gen], 3, 10).unwrap();
        assert_eq!(subgroups(&g).unwrap().len(), 2);
    }

    #[test]
    fn sklyanin_subgroup_counts() {
        let g = closure(&sklyanin_generators(), 3, 100).unwrap();
        let subs = subgroups(&g).unwrap();
        let count = |n: usize| subs.iter().filter(|s| s.order() == n).count();
        assert_eq!((count(1), count(3), count(9), count(27)), (1, 13, 4, 1));
        assert_eq!(subs.len(), 19);
    }

    /// Closed subsets containing the identity, found by include/exclude
    /// backtracking with a closure prune; independent of the cyclic
    /// extension search.
    fn brute_force_closed_subsets(table: &[Vec<usize>]) -> BTreeSet<u64> {
        fn go(table: &[Vec<usize>], pos: usize, inc: u64, exc: u64, out: &mut BTreeSet<u64>) {
            let n = table.len();
            for a in 0..n {
                if inc >> a & 1 == 0 {
                    continue;
                }
                for b in 0..n {
                    if inc >> b & 1 == 1 && exc >> table[a][b] & 1 == 1 {
                        return;
                    }
                }
            }
            if pos == n {
                out.insert(inc);
                return;
            }
            go(table, pos + 1, inc | 1 << pos, exc, out);
            go(table, pos + 1, inc, exc | 1 << pos, out);
        }
        let mut out = BTreeSet::new();
        go(table, 1, 1, 0, &mut out);
        out
    }

    #[test]
    fn subgroups_match_brute_force() {
        for gens in [sklyanin_generators(), vec![quarter_turn()]] {
            let g = closure(&gens, 3, 100).unwrap();
            let fast: BTreeSet<u64> = subgroup_masks(&g).unwrap().into_iter().collect();
            assert_eq!(fast, brute_force_closed_subsets(g.cayley_table()));
        }
    }

    #[test]
    fn subgroup_limit() {
        let big = Matrix::diagonal(&[Cyclotomic::zeta(65, 1)]);
        let g = closure(&[big], 1, 100).unwrap();
        assert_eq!(subgroups(&g).unwrap_err(), Error::TooLarge { order: 65, limit: 64 });
    }
}
