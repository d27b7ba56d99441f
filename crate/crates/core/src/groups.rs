//! Regular subgroups of `Perm(X)` normalized by the image of a Galois group.
//!
//! By the Greither–Pareigis correspondence these are exactly the Hopf Galois
//! structures of the extension. The module also names the isomorphism type
//! of small groups and recognizes structures induced from a semidirect
//! decomposition `G = J ⋊ G′`.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const ENUMERATION_DEGREE_CAP: usize = 12;
pub const CLASSIFICATION_ORDER_CAP: usize = 15;

/// A bijection of `{0, .., m-1}`; `apply(x) = images[x]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation(Vec<usize>);

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(images: Vec<usize>) -> Result<Self> {
        Permutation::new(images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.0
    }
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let m = images.len();
        let mut seen = vec![false; m];
        for &x in &images {
            if x >= m || seen[x] {
                return Err(Error::Validation(format!("bijection: {images:?} is not a permutation")));
            }
            seen[x] = true;
        }
        Ok(Permutation(images))
    }

    pub fn identity(m: usize) -> Self {
        Permutation((0..m).collect())
    }

    /// Builds a permutation of degree `m` from 0-based cycles.
    pub fn from_cycles(m: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..m).collect();
        let mut used = vec![false; m];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x >= m || used[x] {
                    return Err(Error::Validation(format!("bijection: bad cycle {cycle:?}")));
                }
                used[x] = true;
                images[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Permutation::new(images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (x, &y) in self.0.iter().enumerate() {
            inv[y] = x;
        }
        Permutation(inv)
    }

    /// `g ∘ self ∘ g⁻¹`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        let mut out = vec![0; self.degree()];
        for x in 0..self.degree() {
            out[g.0[x]] = g.0[self.0[x]];
        }
        Permutation(out)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn has_fixed_point(&self) -> bool {
        self.0.iter().enumerate().any(|(i, &x)| i == x)
    }

    /// Nontrivial cycles, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.0[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.0[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.0[x];
            }
            out.push(cycle);
        }
        out
    }

    pub fn order(&self) -> usize {
        self.cycles().iter().fold(1, |acc, c| num::integer::lcm(acc, c.len()))
    }

    /// 1-based cycle notation, `()` for the identity.
    pub fn cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".into();
        }
        cycles
            .iter()
            .map(|c| format!("({})", c.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(",")))
            .collect()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.cycle_string())
    }
}

/// Closure of `gens` under composition. Gives up with `None` once the group
/// exceeds `cap` elements or, when `semiregular` is set, as soon as a
/// nonidentity element fixes a point.
fn bounded_closure(degree: usize, gens: &[Permutation], cap: usize, semiregular: bool) -> Option<Vec<Permutation>> {
    let id = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
    let mut order = vec![id];
    let mut queue: VecDeque<usize> = VecDeque::from([0]);
    while let Some(i) = queue.pop_front() {
        for g in gens {
            let p = g.compose(&order[i]);
            if seen.contains(&p) {
                continue;
            }
            if semiregular && p.has_fixed_point() {
                return None;
            }
            seen.insert(p.clone());
            order.push(p);
            if order.len() > cap {
                return None;
            }
            queue.push_back(order.len() - 1);
        }
    }
    order.sort();
    Some(order)
}

fn closure(degree: usize, gens: &[Permutation]) -> Vec<Permutation> {
    bounded_closure(degree, gens, usize::MAX, false).expect("unbounded")
}

/// An abstract finite group given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fingerprint {
    pub order: usize,
    pub element_orders: Vec<usize>,
    pub abelian: bool,
    pub center_order: usize,
    pub class_sizes: Vec<usize>,
}

impl FiniteGroup {
    /// Validates identity, inverses and associativity.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let m = table.len();
        if m == 0 || table.iter().any(|r| r.len() != m || r.iter().any(|&x| x >= m)) {
            return Err(Error::Validation("cayley: table must be m x m with entries below m".into()));
        }
        let identity = (0..m)
            .find(|&e| (0..m).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::Validation("identity: no two-sided identity".into()))?;
        for x in 0..m {
            if !(0..m).any(|y| table[x][y] == identity && table[y][x] == identity) {
                return Err(Error::Validation(format!("inverses: element {x} has no inverse")));
            }
        }
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::Validation(format!("associativity fails for {a}, {b}, {c}")));
                    }
                }
            }
        }
        Ok(FiniteGroup { table, identity })
    }

    /// Table of a permutation group; `elements[i] ∘ elements[j]` in row `i`.
    pub fn from_permutations(elements: &[Permutation]) -> Result<Self> {
        let index: HashMap<&Permutation, usize> = elements.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mut table = vec![vec![0; elements.len()]; elements.len()];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                table[i][j] = *index
                    .get(&a.compose(b))
                    .ok_or_else(|| Error::Validation("closure: elements are not closed under composition".into()))?;
            }
        }
        FiniteGroup::from_table(table)
    }

    pub fn cyclic_product(factors: &[usize]) -> Self {
        let m: usize = factors.iter().product();
        let digits = |mut x: usize| -> Vec<usize> {
            let mut d = vec![0; factors.len()];
            for (slot, &f) in d.iter_mut().zip(factors).rev() {
                *slot = x % f;
                x /= f;
            }
            d
        };
        let encode = |d: &[usize]| d.iter().zip(factors).fold(0, |acc, (x, f)| acc * f + x);
        let table = (0..m)
            .map(|a| {
                let da = digits(a);
                (0..m)
                    .map(|b| {
                        let s: Vec<usize> = da.iter().zip(digits(b)).zip(factors).map(|((x, y), f)| (x + y) % f).collect();
                        encode(&s)
                    })
                    .collect()
            })
            .collect();
        FiniteGroup { table, identity: 0 }
    }

    /// Dihedral group of order `2k`: `r^i s^j` at index `i + k·j`.
    pub fn dihedral(k: usize) -> Self {
        let table = (0..2 * k)
            .map(|a| {
                (0..2 * k)
                    .map(|b| {
                        let (i, j, p, l) = (a % k, a / k, b % k, b / k);
                        let e = if j == 0 { (i + p) % k } else { (i + k - p) % k };
                        e + k * ((j + l) % 2)
                    })
                    .collect()
            })
            .collect();
        FiniteGroup { table, identity: 0 }
    }

    /// Dicyclic group of order `4k`: `a^{2k} = 1`, `x² = a^k`, `x a x⁻¹ = a⁻¹`.
    pub fn dicyclic(k: usize) -> Self {
        let n = 2 * k;
        let table = (0..2 * n)
            .map(|a| {
                (0..2 * n)
                    .map(|b| {
                        let (i, j, p, l) = (a % n, a / n, b % n, b / n);
                        match (j, l) {
                            (0, _) => (i + p) % n + n * l,
                            (_, 0) => (i + n - p) % n + n,
                            _ => (i + n - p + k) % n,
                        }
                    })
                    .collect()
            })
            .collect();
        FiniteGroup { table, identity: 0 }
    }

    pub fn direct_product(&self, other: &FiniteGroup) -> FiniteGroup {
        let (m, k) = (self.order(), other.order());
        let table = (0..m * k)
            .map(|a| (0..m * k).map(|b| self.table[a / k][b / k] * k + other.table[a % k][b % k]).collect())
            .collect();
        FiniteGroup { table, identity: self.identity * k + other.identity }
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order()).find(|&b| self.table[a][b] == self.identity).expect("validated group")
    }

    pub fn element_order(&self, a: usize) -> usize {
        let (mut x, mut k) = (a, 1);
        while x != self.identity {
            x = self.table[x][a];
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        let m = self.order();
        (0..m).all(|a| (0..m).all(|b| self.table[a][b] == self.table[b][a]))
    }

    pub fn fingerprint(&self) -> Fingerprint {
        let m = self.order();
        let mut element_orders: Vec<usize> = (0..m).map(|a| self.element_order(a)).collect();
        element_orders.sort_unstable();
        let center_order = (0..m).filter(|&a| (0..m).all(|b| self.table[a][b] == self.table[b][a])).count();
        let mut seen = vec![false; m];
        let mut class_sizes = Vec::new();
        for a in 0..m {
            if seen[a] {
                continue;
            }
            let class: BTreeSet<usize> = (0..m).map(|g| self.table[self.table[g][a]][self.inverse(g)]).collect();
            for &c in &class {
                seen[c] = true;
            }
            class_sizes.push(class.len());
        }
        class_sizes.sort_unstable();
        Fingerprint { order: m, element_orders, abelian: self.is_abelian(), center_order, class_sizes }
    }

    /// Greedy generating set, largest element orders first.
    fn generators(&self) -> Vec<usize> {
        let m = self.order();
        let mut by_order: Vec<usize> = (0..m).collect();
        by_order.sort_by_key(|&a| std::cmp::Reverse(self.element_order(a)));
        let mut gens = Vec::new();
        let mut span: HashSet<usize> = HashSet::from([self.identity]);
        for a in by_order {
            if span.len() == m {
                break;
            }
            if span.contains(&a) {
                continue;
            }
            gens.push(a);
            span = self.subgroup_span(&gens);
        }
        gens
    }

    fn subgroup_span(&self, gens: &[usize]) -> HashSet<usize> {
        let mut span = HashSet::from([self.identity]);
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.table[x][g];
                if span.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        span
    }

    /// Extends `gens[i] ↦ images[i]` to a map on all of `self`, if consistent.
    fn extend_map(&self, other: &FiniteGroup, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
        let m = self.order();
        let mut map = vec![usize::MAX; m];
        map[self.identity] = other.identity;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for (&g, &h) in gens.iter().zip(images) {
                let y = self.table[x][g];
                let target = other.table[map[x]][h];
                if map[y] == usize::MAX {
                    map[y] = target;
                    queue.push_back(y);
                } else if map[y] != target {
                    return None;
                }
            }
        }
        let distinct: HashSet<usize> = map.iter().copied().collect();
        if distinct.len() != m {
            return None;
        }
        for a in 0..m {
            for b in 0..m {
                if map[self.table[a][b]] != other.table[map[a]][map[b]] {
                    return None;
                }
            }
        }
        Some(map)
    }

    /// An isomorphism `self → other` found by backtracking over images of a
    /// generating set.
    pub fn isomorphism(&self, other: &FiniteGroup) -> Option<Vec<usize>> {
        if self.order() != other.order() || self.fingerprint() != other.fingerprint() {
            return None;
        }
        let gens = self.generators();
        let candidates: Vec<Vec<usize>> = gens
            .iter()
            .map(|&g| {
                let k = self.element_order(g);
                (0..other.order()).filter(|&h| other.element_order(h) == k).collect()
            })
            .collect();
        let mut images = Vec::with_capacity(gens.len());
        self.backtrack(other, &gens, &candidates, &mut images)
    }

    fn backtrack(&self, other: &FiniteGroup, gens: &[usize], cands: &[Vec<usize>], images: &mut Vec<usize>) -> Option<Vec<usize>> {
        if images.len() == gens.len() {
            return self.extend_map(other, gens, images);
        }
        for &h in &cands[images.len()] {
            if images.contains(&h) {
                continue;
            }
            images.push(h);
            if let Some(map) = self.backtrack(other, gens, cands, images) {
                return Some(map);
            }
            images.pop();
        }
        None
    }

    pub fn is_isomorphic(&self, other: &FiniteGroup) -> bool {
        self.isomorphism(other).is_some()
    }
}

fn catalog() -> &'static [(String, FiniteGroup)] {
    static CATALOG: OnceLock<Vec<(String, FiniteGroup)>> = OnceLock::new();
    CATALOG.get_or_init(|| {
        let mut c: Vec<(String, FiniteGroup)> =
            (1..=CLASSIFICATION_ORDER_CAP).map(|n| (format!("C{n}"), FiniteGroup::cyclic_product(&[n]))).collect();
        for f in [&[2usize, 2][..], &[4, 2], &[2, 2, 2], &[3, 3], &[6, 2]] {
            let name = f.iter().map(|x| format!("C{x}")).collect::<Vec<_>>().join("x");
            c.push((name, FiniteGroup::cyclic_product(f)));
        }
        c.push(("S3".into(), FiniteGroup::dihedral(3)));
        for k in [4, 5, 6, 7] {
            c.push((format!("D{}", 2 * k), FiniteGroup::dihedral(k)));
        }
        c.push(("Q8".into(), FiniteGroup::dicyclic(2)));
        c.push(("Dic12".into(), FiniteGroup::dicyclic(3)));
        let a4 = closure(
            4,
            &[
                Permutation::from_cycles(4, &[&[0, 1, 2]]).unwrap(),
                Permutation::from_cycles(4, &[&[0, 1], &[2, 3]]).unwrap(),
            ],
        );
        c.push(("A4".into(), FiniteGroup::from_permutations(&a4).unwrap()));
        c
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupType {
    pub name: String,
    pub fingerprint: Fingerprint,
}

pub fn classify_group(g: &FiniteGroup) -> Result<GroupType> {
    if g.order() > CLASSIFICATION_ORDER_CAP {
        return Err(Error::OrderTooLarge { order: g.order(), cap: CLASSIFICATION_ORDER_CAP });
    }
    let fingerprint = g.fingerprint();
    catalog()
        .iter()
        .filter(|(_, h)| h.order() == g.order())
        .find(|(_, h)| g.is_isomorphic(h))
        .map(|(name, _)| GroupType { name: name.clone(), fingerprint: fingerprint.clone() })
        .ok_or_else(|| Error::Validation(format!("no catalog group matches fingerprint {fingerprint:?}")))
}

/// A subgroup of `Sym(m)` acting simply transitively, as a sorted element list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RegularSubgroup {
    degree: usize,
    elements: Vec<Permutation>,
}

impl RegularSubgroup {
    pub fn new(degree: usize, mut elements: Vec<Permutation>) -> Result<Self> {
        if elements.iter().any(|p| p.degree() != degree) {
            return Err(Error::Validation("degree: elements act on different sets".into()));
        }
        elements.sort();
        elements.dedup();
        if elements.len() != degree {
            return Err(Error::Validation(format!("regularity: {} elements on {degree} points", elements.len())));
        }
        let set: HashSet<&Permutation> = elements.iter().collect();
        for a in &elements {
            for b in &elements {
                if !set.contains(&a.compose(b)) {
                    return Err(Error::Validation("closure: not closed under composition".into()));
                }
            }
        }
        let orbit: HashSet<usize> = elements.iter().map(|p| p.apply(0)).collect();
        if orbit.len() != degree {
            return Err(Error::Validation("regularity: orbit map is not a bijection".into()));
        }
        Ok(RegularSubgroup { degree, elements })
    }

    pub fn generated_by(degree: usize, gens: &[Permutation]) -> Result<Self> {
        let elements = bounded_closure(degree, gens, degree, false)
            .ok_or_else(|| Error::Validation("regularity: generated group is too large".into()))?;
        RegularSubgroup::new(degree, elements)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    pub fn is_normalized_by(&self, g: &Permutation) -> bool {
        self.elements.iter().all(|n| self.contains(&n.conjugate_by(g)))
    }

    /// Orbit map at base point `x`: the unique element sending `x` to `y`.
    pub fn element_sending(&self, x: usize, y: usize) -> &Permutation {
        self.elements.iter().find(|p| p.apply(x) == y).expect("regular")
    }

    pub fn as_group(&self) -> FiniteGroup {
        FiniteGroup::from_permutations(&self.elements).expect("validated subgroup")
    }

    pub fn is_abelian(&self) -> bool {
        self.elements.iter().all(|a| self.elements.iter().all(|b| a.compose(b) == b.compose(a)))
    }
}

pub fn classify_type(n: &RegularSubgroup) -> Result<GroupType> {
    if n.degree() > CLASSIFICATION_ORDER_CAP {
        return Err(Error::OrderTooLarge { order: n.degree(), cap: CLASSIFICATION_ORDER_CAP });
    }
    classify_group(&n.as_group())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    #[serde(rename = "J")]
    pub j: Vec<usize>,
    #[serde(rename = "Gprime")]
    pub g_prime: Vec<usize>,
}

/// A finite group with named elements and an optional decomposition
/// `G = J ⋊ G′`, given as index lists into the element list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupData {
    group: FiniteGroup,
    names: Vec<String>,
    decomposition: Option<Decomposition>,
}

impl GroupData {
    pub fn new(cayley: Vec<Vec<usize>>, names: Vec<String>, decomposition: Option<Decomposition>) -> Result<Self> {
        let group = FiniteGroup::from_table(cayley)?;
        if names.len() != group.order() {
            return Err(Error::Validation(format!("names: {} labels for {} elements", names.len(), group.order())));
        }
        let data = GroupData { group, names, decomposition: None };
        match decomposition {
            Some(d) => data.with_decomposition(d),
            None => Ok(data),
        }
    }

    /// Group of permutations listed in a fixed order, with names.
    pub fn from_elements(elements: &[Permutation], names: Vec<String>) -> Result<Self> {
        let group = FiniteGroup::from_permutations(elements)?;
        GroupData::new(group.table, names, None)
    }

    /// The group generated by `gens`, elements in lexicographic order of
    /// their image arrays and named by cycle notation.
    pub fn from_generators(degree: usize, gens: &[Permutation]) -> Result<Self> {
        if gens.iter().any(|g| g.degree() != degree) {
            return Err(Error::Validation("degree: generators act on different sets".into()));
        }
        let elements = closure(degree, gens);
        let names = elements.iter().map(|p| p.cycle_string()).collect();
        GroupData::from_elements(&elements, names)
    }

    pub fn with_decomposition(mut self, d: Decomposition) -> Result<Self> {
        let m = self.order();
        let g = &self.group;
        let is_subgroup = |s: &[usize]| {
            s.iter().all(|&x| x < m)
                && s.contains(&g.identity)
                && s.iter().all(|&a| s.iter().all(|&b| s.contains(&g.mul(a, b))))
        };
        for (name, s) in [("J", &d.j), ("Gprime", &d.g_prime)] {
            if !is_subgroup(s) || s.iter().collect::<HashSet<_>>().len() != s.len() {
                return Err(Error::Validation(format!("decomposition: {name} is not a subgroup")));
            }
        }
        if !(0..m).all(|x| d.j.iter().all(|&a| d.j.contains(&g.mul(g.mul(x, a), g.inverse(x))))) {
            return Err(Error::Validation("decomposition: J is not normal".into()));
        }
        if d.j.iter().filter(|x| d.g_prime.contains(x)).count() != 1 || d.j.len() * d.g_prime.len() != m {
            return Err(Error::Validation("decomposition: J and Gprime are not complements".into()));
        }
        self.decomposition = Some(d);
        Ok(self)
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn cayley(&self) -> &[Vec<usize>] {
        &self.group.table
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn decomposition(&self) -> Option<&Decomposition> {
        self.decomposition.as_ref()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    fn require_decomposition(&self) -> Result<&Decomposition> {
        self.decomposition.as_ref().ok_or(Error::NoDecomposition)
    }

    /// `factor[g] = (i, k)` with `g = J[i]·G′[k]`.
    fn factorization(&self) -> Result<Vec<(usize, usize)>> {
        let d = self.require_decomposition()?;
        let mut out = vec![(usize::MAX, usize::MAX); self.order()];
        for (i, &s) in d.j.iter().enumerate() {
            for (k, &t) in d.g_prime.iter().enumerate() {
                out[self.group.mul(s, t)] = (i, k);
            }
        }
        Ok(out)
    }
}

/// `λ(g)(x) = gx` for every `g`, in element order.
pub fn left_translations(g: &GroupData) -> Vec<Permutation> {
    let m = g.order();
    (0..m).map(|a| Permutation((0..m).map(|x| g.group.mul(a, x)).collect())).collect()
}

/// `ρ(g)(x) = x g⁻¹` for every `g`, in element order.
pub fn right_translations(g: &GroupData) -> Vec<Permutation> {
    let m = g.order();
    (0..m)
        .map(|a| {
            let inv = g.group.inverse(a);
            Permutation((0..m).map(|x| g.group.mul(x, inv)).collect())
        })
        .collect()
}

/// `λ_c(στ)(σ_i) = σ·(τ σ_i τ⁻¹)` on `J`, indexed by position in `J`.
pub fn lambda_c(g: &GroupData) -> Result<Vec<Permutation>> {
    let d = g.require_decomposition()?;
    let factor = g.factorization()?;
    let grp = &g.group;
    Ok((0..g.order())
        .map(|x| {
            let (i, k) = factor[x];
            let (s, t) = (d.j[i], d.g_prime[k]);
            let t_inv = grp.inverse(t);
            Permutation(
                d.j.iter()
                    .map(|&si| {
                        let y = grp.mul(s, grp.mul(grp.mul(t, si), t_inv));
                        d.j.iter().position(|&z| z == y).expect("J is normal")
                    })
                    .collect(),
            )
        })
        .collect())
}

/// Left regular representation of `G′` on itself.
pub fn lambda_prime(g: &GroupData) -> Result<Vec<Permutation>> {
    let d = g.require_decomposition()?;
    Ok(d.g_prime
        .iter()
        .map(|&t| {
            Permutation(
                d.g_prime
                    .iter()
                    .map(|&x| d.g_prime.iter().position(|&z| z == g.group.mul(t, x)).expect("subgroup"))
                    .collect(),
            )
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranslationActions {
    pub lambda: Vec<Permutation>,
    pub rho: Vec<Permutation>,
    pub lambda_c: Option<Vec<Permutation>>,
    pub lambda_prime: Option<Vec<Permutation>>,
}

pub fn translation_actions(g: &GroupData) -> TranslationActions {
    TranslationActions {
        lambda: left_translations(g),
        rho: right_translations(g),
        lambda_c: lambda_c(g).ok(),
        lambda_prime: lambda_prime(g).ok(),
    }
}

/// Fixed-point-free permutations of degree `m` made of `m/k` cycles of
/// length `k`, each cycle led by its least point.
fn uniform_cycle_permutations(m: usize, k: usize) -> Vec<Permutation> {
    fn rec(images: &mut Vec<usize>, free: &mut Vec<bool>, k: usize, out: &mut Vec<Permutation>) {
        let Some(start) = free.iter().position(|&f| f) else {
            out.push(Permutation(images.clone()));
            return;
        };
        free[start] = false;
        let mut cycle = vec![start];
        extend(images, free, k, &mut cycle, out);
        free[start] = true;
    }
    fn extend(images: &mut Vec<usize>, free: &mut Vec<bool>, k: usize, cycle: &mut Vec<usize>, out: &mut Vec<Permutation>) {
        if cycle.len() == k {
            for i in 0..k {
                images[cycle[i]] = cycle[(i + 1) % k];
            }
            rec(images, free, k, out);
            return;
        }
        for x in cycle[0] + 1..free.len() {
            if free[x] {
                free[x] = false;
                cycle.push(x);
                extend(images, free, k, cycle, out);
                cycle.pop();
                free[x] = true;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut (0..m).collect(), &mut vec![true; m], k, &mut out);
    out
}

fn is_prime_power(k: usize) -> bool {
    if k < 2 {
        return false;
    }
    let p = (2..=k).find(|p| k % p == 0).expect("k >= 2");
    let mut x = k;
    while x % p == 0 {
        x /= p;
    }
    x == 1
}

/// The smallest subgroup containing `x` and closed under conjugation by
/// `gens`, if it is semiregular of order dividing `m`.
fn invariant_closure(m: usize, x: &Permutation, gens: &[Permutation]) -> Option<Vec<Permutation>> {
    let mut orbit: Vec<Permutation> = vec![x.clone()];
    let mut seen: HashSet<Permutation> = HashSet::from([x.clone()]);
    let mut i = 0;
    while i < orbit.len() {
        for g in gens {
            let c = orbit[i].conjugate_by(g);
            if seen.insert(c.clone()) {
                orbit.push(c);
                if orbit.len() >= m {
                    return None;
                }
            }
        }
        i += 1;
    }
    let group = bounded_closure(m, &orbit, m, true)?;
    (m % group.len() == 0).then_some(group)
}

/// All regular subgroups of `Sym(m)` normalized by the group generated by
/// `normalizer_gens`, sorted by element lists.
pub fn enumerate_regular_subgroups(m: usize, normalizer_gens: &[Permutation]) -> Result<Vec<RegularSubgroup>> {
    if m > ENUMERATION_DEGREE_CAP {
        return Err(Error::DegreeTooLarge { degree: m, cap: ENUMERATION_DEGREE_CAP });
    }
    if m == 0 {
        return Err(Error::Validation("degree: empty set".into()));
    }
    if normalizer_gens.iter().any(|g| g.degree() != m) {
        return Err(Error::DimensionMismatch { expected: m, found: normalizer_gens[0].degree() });
    }
    if m == 1 {
        return Ok(vec![RegularSubgroup::new(1, vec![Permutation::identity(1)])?]);
    }
    let candidates: Vec<Permutation> = (2..=m)
        .filter(|&k| m % k == 0 && is_prime_power(k))
        .flat_map(|k| uniform_cycle_permutations(m, k))
        .collect();
    let minimal: BTreeSet<Vec<Permutation>> = candidates
        .par_iter()
        .filter_map(|x| invariant_closure(m, x, normalizer_gens))
        .collect::<HashSet<_>>()
        .into_iter()
        .collect();
    let minimal: Vec<Vec<Permutation>> = minimal.into_iter().collect();

    let trivial = vec![Permutation::identity(m)];
    let mut visited: HashSet<Vec<Permutation>> = HashSet::from([trivial.clone()]);
    let mut stack = vec![trivial];
    let mut found = BTreeSet::new();
    while let Some(current) = stack.pop() {
        if current.len() == m {
            found.insert(current);
            continue;
        }
        for a in &minimal {
            if a.iter().all(|x| current.binary_search(x).is_ok()) {
                continue;
            }
            let gens: Vec<Permutation> = current.iter().chain(a.iter()).cloned().collect();
            let Some(joined) = bounded_closure(m, &gens, m, true) else { continue };
            if m % joined.len() == 0 && visited.insert(joined.clone()) {
                stack.push(joined);
            }
        }
    }
    let mut out = Vec::with_capacity(found.len());
    for elements in found {
        let n = RegularSubgroup::new(m, elements)?;
        debug_assert!(normalizer_gens.iter().all(|g| n.is_normalized_by(g)));
        out.push(n);
    }
    Ok(out)
}

/// `ι(φ, ψ)(στ) = φ(σ)ψ(τ)` on `G`.
pub fn iota(g: &GroupData, phi: &Permutation, psi: &Permutation) -> Result<Permutation> {
    let d = g.require_decomposition()?;
    let factor = g.factorization()?;
    Permutation::new(
        (0..g.order())
            .map(|x| {
                let (i, k) = factor[x];
                g.group.mul(d.j[phi.apply(i)], d.g_prime[psi.apply(k)])
            })
            .collect(),
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedFactors {
    pub n1: RegularSubgroup,
    pub n2: RegularSubgroup,
}

/// Decides whether `n = ι(N₁ × N₂)` for regular `N₁ ⊆ Perm(J)` normalized by
/// `λ_c(G)` and `N₂ ⊆ Perm(G′)` normalized by `λ′(G′)`.
pub fn detect_induced(g: &GroupData, n: &RegularSubgroup) -> Result<Option<InducedFactors>> {
    let d = g.require_decomposition()?;
    let factor = g.factorization()?;
    let (r, u) = (d.j.len(), d.g_prime.len());
    let mut first: BTreeSet<Permutation> = BTreeSet::new();
    let mut second: BTreeSet<Permutation> = BTreeSet::new();
    for p in n.elements() {
        let mut phi = vec![usize::MAX; r];
        let mut psi = vec![usize::MAX; u];
        for x in 0..g.order() {
            let (i, k) = factor[x];
            let (i2, k2) = factor[p.apply(x)];
            if (phi[i] != usize::MAX && phi[i] != i2) || (psi[k] != usize::MAX && psi[k] != k2) {
                return Ok(None);
            }
            phi[i] = i2;
            psi[k] = k2;
        }
        first.insert(Permutation::new(phi)?);
        second.insert(Permutation::new(psi)?);
    }
    if first.len() * second.len() != n.degree() {
        return Ok(None);
    }
    let (Ok(n1), Ok(n2)) = (
        RegularSubgroup::new(r, first.into_iter().collect()),
        RegularSubgroup::new(u, second.into_iter().collect()),
    ) else {
        return Ok(None);
    };
    let normalized = lambda_c(g)?.iter().all(|s| n1.is_normalized_by(s))
        && lambda_prime(g)?.iter().all(|t| n2.is_normalized_by(t));
    Ok(normalized.then_some(InducedFactors { n1, n2 }))
}

/// `ι(N₁ × N₂)` as a subgroup of `Perm(G)`.
pub fn recompose(g: &GroupData, f: &InducedFactors) -> Result<RegularSubgroup> {
    let mut elements = Vec::with_capacity(g.order());
    for phi in f.n1.elements() {
        for psi in f.n2.elements() {
            elements.push(iota(g, phi, psi)?);
        }
    }
    RegularSubgroup::new(g.order(), elements)
}
