//! Finite groups given by multiplication tables, with the subgroup, coset and
//! conjugacy machinery the CM-type computations are built on.
//!
//! Elements are plain indices `0..order`. Element sets are bitsets, which is
//! why group orders are capped at [`MAX_ORDER`].

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cmtype::CosetSpace;
use crate::error::{Error, Result};

/// Largest supported group order.
pub const MAX_ORDER: usize = 96;

/// A set of group elements, stored as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElemSet(u128);

impl ElemSet {
    pub const fn empty() -> Self {
        ElemSet(0)
    }

    pub fn singleton(x: usize) -> Self {
        ElemSet(1u128 << x)
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    pub fn insert(&mut self, x: usize) {
        self.0 |= 1u128 << x;
    }

    pub fn contains(self, x: usize) -> bool {
        x < 128 && self.0 >> x & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: ElemSet) -> ElemSet {
        ElemSet(self.0 | other.0)
    }

    pub fn intersection(self, other: ElemSet) -> ElemSet {
        ElemSet(self.0 & other.0)
    }

    pub fn is_subset(self, other: ElemSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Elements in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let x = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(x)
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for ElemSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = ElemSet::empty();
        for x in iter {
            s.insert(x);
        }
        s
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Base groups accepted by [`GroupSpec::C2Times`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BaseGroup {
    A4,
    S4,
}

/// Declarative description of a group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupSpec {
    Cyclic { n: usize },
    /// Dihedral group of order `2n`.
    Dihedral { n: usize },
    C2Times { base: BaseGroup },
    /// `(Z/nZ)^×`, elements labelled `σa` by residue `a`.
    UnitGroupMod { n: usize },
    Table { mul: Vec<Vec<usize>> },
    /// Direct product, ordered lexicographically.
    Product { factors: Vec<GroupSpec> },
}

/// A validated finite group.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
    identity: usize,
    labels: Vec<String>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.name, self.order)
    }
}

impl FiniteGroup {
    /// Validates a multiplication table and builds the group.
    ///
    /// Associativity is checked on every triple.
    pub fn from_table(name: impl Into<String>, mul: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Result<Self> {
        let n = mul.len();
        if n == 0 {
            return Err(Error::AxiomViolation("empty multiplication table".into()));
        }
        if n > MAX_ORDER {
            return Err(Error::OrderTooLarge(n));
        }
        for (i, row) in mul.iter().enumerate() {
            if row.len() != n {
                return Err(Error::AxiomViolation(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(Error::AxiomViolation(format!("row {i} contains out-of-range entry {bad}")));
            }
        }
        let flat: Vec<usize> = mul.iter().flatten().copied().collect();
        let at = |a: usize, b: usize| flat[a * n + b];

        let identity = (0..n)
            .find(|&e| (0..n).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or_else(|| Error::AxiomViolation("no identity element".into()))?;
        let mut inv = vec![0; n];
        for (a, slot) in inv.iter_mut().enumerate() {
            let candidates: Vec<usize> = (0..n).filter(|&b| at(a, b) == identity).collect();
            match candidates.as_slice() {
                [b] if at(*b, a) == identity => *slot = *b,
                _ => {
                    return Err(Error::AxiomViolation(format!(
                        "element {a} has no unique two-sided inverse"
                    )))
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = at(a, b);
                for c in 0..n {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(Error::AxiomViolation(format!(
                            "associativity fails on ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        let labels = match labels {
            Some(l) if l.len() == n => l,
            Some(l) => {
                return Err(Error::InvalidSpec(format!(
                    "{} labels given for a group of order {n}",
                    l.len()
                )))
            }
            None => (0..n).map(|i| i.to_string()).collect(),
        };
        Ok(FiniteGroup {
            name: name.into(),
            order: n,
            mul: flat,
            inv,
            identity,
            labels,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn all(&self) -> ElemSet {
        self.elements().collect()
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    pub fn check_element(&self, x: usize) -> Result<()> {
        if x < self.order {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange {
                elem: x,
                order: self.order,
            })
        }
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_central(&self, z: usize) -> bool {
        self.elements().all(|g| self.mul(z, g) == self.mul(g, z))
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != self.identity {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    /// `g⁻¹ x g`
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    /// `{g s : s ∈ set}`
    pub fn left_translate(&self, g: usize, set: ElemSet) -> ElemSet {
        set.iter().map(|s| self.mul(g, s)).collect()
    }

    /// `{s g : s ∈ set}`
    pub fn right_translate(&self, set: ElemSet, g: usize) -> ElemSet {
        set.iter().map(|s| self.mul(s, g)).collect()
    }

    /// `{g⁻¹ s g : s ∈ set}`
    pub fn conjugate_set(&self, set: ElemSet, g: usize) -> ElemSet {
        set.iter().map(|s| self.conj(s, g)).collect()
    }

    pub fn inverse_set(&self, set: ElemSet) -> ElemSet {
        set.iter().map(|s| self.inv(s)).collect()
    }

    /// Elements `g` with `g S = S`.
    pub fn left_stabilizer(&self, set: ElemSet) -> ElemSet {
        self.elements()
            .filter(|&g| self.left_translate(g, set) == set)
            .collect()
    }

    /// Elements `g` with `S g = S`.
    pub fn right_stabilizer(&self, set: ElemSet) -> ElemSet {
        self.elements()
            .filter(|&g| self.right_translate(set, g) == set)
            .collect()
    }

    /// Smallest subgroup containing `gens`.
    pub fn closure(&self, gens: ElemSet) -> ElemSet {
        let mut set = gens.union(ElemSet::singleton(self.identity));
        let gen_list: Vec<usize> = gens.iter().collect();
        let mut frontier: Vec<usize> = set.iter().collect();
        while let Some(x) = frontier.pop() {
            for &g in &gen_list {
                let y = self.mul(x, g);
                if !set.contains(y) {
                    set.insert(y);
                    frontier.push(y);
                }
            }
        }
        set
    }

    /// Whether `set` is closed under multiplication and contains the
    /// identity (finite, so inverses follow).
    pub fn is_subgroup_set(&self, set: ElemSet) -> bool {
        set.contains(self.identity)
            && set
                .iter()
                .all(|a| set.iter().all(|b| set.contains(self.mul(a, b))))
    }
}

/// A subgroup, stored as a sorted element list and a bitmask.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    elems: Vec<usize>,
    mask: ElemSet,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup{:?}", self.elems)
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.elems.cmp(&other.elems)
    }
}

impl Subgroup {
    /// Validates that `elems` is a subgroup of `group`.
    pub fn new(group: &FiniteGroup, elems: &[usize]) -> Result<Self> {
        for &x in elems {
            group.check_element(x)?;
        }
        let mask: ElemSet = elems.iter().copied().collect();
        if mask.len() != elems.len() {
            return Err(Error::NotASubgroup("repeated elements".into()));
        }
        Self::from_mask(group, mask)
    }

    pub fn from_mask(group: &FiniteGroup, mask: ElemSet) -> Result<Self> {
        if !mask.is_subset(group.all()) {
            return Err(Error::NotASubgroup("elements out of range".into()));
        }
        if !mask.contains(group.identity()) {
            return Err(Error::NotASubgroup("missing the identity".into()));
        }
        if !group.is_subgroup_set(mask) {
            return Err(Error::NotASubgroup(format!(
                "{:?} is not closed under multiplication",
                mask
            )));
        }
        Ok(Self::from_mask_unchecked(mask))
    }

    pub(crate) fn from_mask_unchecked(mask: ElemSet) -> Self {
        Subgroup {
            elems: mask.to_vec(),
            mask,
        }
    }

    pub fn trivial(group: &FiniteGroup) -> Self {
        Self::from_mask_unchecked(ElemSet::singleton(group.identity()))
    }

    pub fn whole(group: &FiniteGroup) -> Self {
        Self::from_mask_unchecked(group.all())
    }

    pub fn elems(&self) -> &[usize] {
        &self.elems
    }

    pub fn mask(&self) -> ElemSet {
        self.mask
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.mask.contains(x)
    }
}

/// A central element of order two.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CentralInvolution(usize);

impl CentralInvolution {
    pub fn new(group: &FiniteGroup, elem: usize) -> Result<Self> {
        group.check_element(elem)?;
        if elem == group.identity()
            || group.mul(elem, elem) != group.identity()
            || !group.is_central(elem)
        {
            return Err(Error::NotACentralInvolution(elem));
        }
        Ok(CentralInvolution(elem))
    }

    pub fn elem(self) -> usize {
        self.0
    }
}

/// Builds a group from its spec, with canonical element ordering.
pub fn make_group(spec: &GroupSpec) -> Result<FiniteGroup> {
    let order = spec_order(spec)?;
    if order > MAX_ORDER {
        return Err(Error::OrderTooLarge(order));
    }
    match spec {
        GroupSpec::Cyclic { n } => {
            let n = *n;
            let mul = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
            let labels = (0..n).map(|k| format!("σ^{k}")).collect();
            FiniteGroup::from_table(format!("C{n}"), mul, Some(labels))
        }
        GroupSpec::Dihedral { n } => dihedral(*n),
        GroupSpec::C2Times { base } => c2_times(*base),
        GroupSpec::UnitGroupMod { n } => unit_group_mod(*n),
        GroupSpec::Table { mul } => FiniteGroup::from_table("table", mul.clone(), None),
        GroupSpec::Product { factors } => {
            let groups = factors.iter().map(make_group).collect::<Result<Vec<_>>>()?;
            let mut acc = groups[0].clone();
            for g in &groups[1..] {
                acc = direct_product(&acc, g)?;
            }
            Ok(acc)
        }
    }
}

fn spec_order(spec: &GroupSpec) -> Result<usize> {
    let positive = |n: usize, what: &str| {
        if n == 0 {
            Err(Error::InvalidSpec(format!("{what} requires n >= 1")))
        } else {
            Ok(n)
        }
    };
    match spec {
        GroupSpec::Cyclic { n } => positive(*n, "cyclic"),
        GroupSpec::Dihedral { n } => positive(*n, "dihedral").map(|n| n.saturating_mul(2)),
        GroupSpec::C2Times { base: BaseGroup::A4 } => Ok(24),
        GroupSpec::C2Times { base: BaseGroup::S4 } => Ok(48),
        GroupSpec::UnitGroupMod { n } => positive(*n, "unit_group_mod").map(|n| euler_phi(n as u64) as usize),
        GroupSpec::Table { mul } => Ok(mul.len()),
        GroupSpec::Product { factors } => {
            if factors.is_empty() {
                return Err(Error::InvalidSpec("product requires at least one factor".into()));
            }
            factors
                .iter()
                .try_fold(1usize, |acc, f| Ok(acc.saturating_mul(spec_order(f)?)))
        }
    }
}

fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn dihedral(n: usize) -> Result<FiniteGroup> {
    // index b*n + a  <->  s^b r^a ; r^a s = s r^{-a}
    let idx = |b: usize, a: usize| b * n + a;
    let mut mul = vec![vec![0; 2 * n]; 2 * n];
    for b1 in 0..2 {
        for a1 in 0..n {
            for b2 in 0..2 {
                for a2 in 0..n {
                    let a1t = if b2 == 1 { (n - a1) % n } else { a1 };
                    mul[idx(b1, a1)][idx(b2, a2)] = idx((b1 + b2) % 2, (a1t + a2) % n);
                }
            }
        }
    }
    let power = |s: &str, a: usize| match a {
        0 => String::new(),
        1 => s.to_string(),
        _ => format!("{s}^{a}"),
    };
    let mut labels: Vec<String> = (0..n)
        .map(|a| if a == 0 { "e".into() } else { power("r", a) })
        .collect();
    labels.extend((0..n).map(|a| format!("s{}", power("r", a))));
    FiniteGroup::from_table(format!("D{}", 2 * n), mul, Some(labels))
}

fn permutations_of_4(even_only: bool) -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    let distinct: BTreeSet<usize> = p.iter().copied().collect();
                    if distinct.len() < 4 {
                        continue;
                    }
                    let inversions = (0..4)
                        .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
                        .filter(|&(i, j)| p[i] > p[j])
                        .count();
                    if !even_only || inversions % 2 == 0 {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

fn c2_times(base: BaseGroup) -> Result<FiniteGroup> {
    let perms = permutations_of_4(base == BaseGroup::A4);
    let m = perms.len();
    let index_of = |p: &[usize; 4]| perms.iter().position(|q| q == p).expect("closed under composition");
    // (p q)(i) = q(p(i)): apply p first, then q.
    let base_mul: Vec<Vec<usize>> = perms
        .iter()
        .map(|p| {
            perms
                .iter()
                .map(|q| index_of(&[q[p[0]], q[p[1]], q[p[2]], q[p[3]]]))
                .collect()
        })
        .collect();
    let labels: Vec<String> = perms
        .iter()
        .map(|p| p.iter().map(|x| (x + 1).to_string()).collect())
        .collect();
    let base_name = match base {
        BaseGroup::A4 => "A4",
        BaseGroup::S4 => "S4",
    };
    let base_group = FiniteGroup::from_table(base_name, base_mul, Some(labels))?;
    let c2 = make_group(&GroupSpec::Cyclic { n: 2 })?;
    let mut g = direct_product(&c2, &base_group)?;
    g.name = format!("C2x{base_name}");
    debug_assert_eq!(g.order(), 2 * m);
    Ok(g)
}

fn unit_group_mod(n: usize) -> Result<FiniteGroup> {
    let residues: Vec<usize> = (0..n.max(1))
        .filter(|&a| num_integer::gcd(a, n) == 1)
        .collect();
    let residues = if n == 1 { vec![0] } else { residues };
    let pos = |r: usize| residues.binary_search(&r).expect("units are closed");
    let mul = residues
        .iter()
        .map(|&a| residues.iter().map(|&b| pos(a * b % n)).collect())
        .collect();
    let labels = residues.iter().map(|a| format!("σ{a}")).collect();
    FiniteGroup::from_table(format!("(Z/{n})^x"), mul, Some(labels))
}

/// Direct product with lexicographic element order: `(a, b) ↦ a·|H| + b`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<FiniteGroup> {
    let (m, k) = (g.order(), h.order());
    if m * k > MAX_ORDER {
        return Err(Error::OrderTooLarge(m * k));
    }
    let mul = (0..m * k)
        .map(|x| {
            (0..m * k)
                .map(|y| g.mul(x / k, y / k) * k + h.mul(x % k, y % k))
                .collect()
        })
        .collect();
    let labels = (0..m * k)
        .map(|x| format!("({},{})", g.label(x / k), h.label(x % k)))
        .collect();
    FiniteGroup::from_table(format!("{}x{}", g.name(), h.name()), mul, Some(labels))
}

/// All central involutions, in index order.
pub fn central_involutions(group: &FiniteGroup) -> Vec<CentralInvolution> {
    group
        .elements()
        .filter(|&z| {
            z != group.identity() && group.mul(z, z) == group.identity() && group.is_central(z)
        })
        .map(CentralInvolution)
        .collect()
}

/// Every subgroup of `group`, sorted lexicographically by element list.
///
/// Each subgroup is the join of the cyclic subgroups it contains, so growing
/// from the trivial subgroup by joining cyclic subgroups reaches all of them.
pub fn all_subgroups(group: &FiniteGroup) -> Vec<Subgroup> {
    let cyclic: BTreeSet<ElemSet> = group
        .elements()
        .map(|g| group.closure(ElemSet::singleton(g)))
        .collect();
    let trivial = ElemSet::singleton(group.identity());
    let mut seen: BTreeSet<ElemSet> = BTreeSet::from([trivial]);
    let mut frontier = vec![trivial];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for k in &frontier {
            for c in &cyclic {
                if c.is_subset(*k) {
                    continue;
                }
                let joined = group.closure(k.union(*c));
                if seen.insert(joined) {
                    next.push(joined);
                }
            }
        }
        frontier = next;
    }
    let mut subs: Vec<Subgroup> = seen.into_iter().map(Subgroup::from_mask_unchecked).collect();
    subs.sort();
    subs
}

/// Subgroups of order `k`, optionally skipping those containing `excluding`.
pub fn subgroups_of_order(
    group: &FiniteGroup,
    k: usize,
    excluding: Option<CentralInvolution>,
) -> Result<Vec<Subgroup>> {
    if k == 0 || !group.order().is_multiple_of(k) {
        return Err(Error::NonDivisorOrder {
            k,
            order: group.order(),
        });
    }
    Ok(all_subgroups(group)
        .into_iter()
        .filter(|h| h.order() == k)
        .filter(|h| excluding.is_none_or(|rho| !h.contains(rho.elem())))
        .filter(|h| group.is_subgroup_set(h.mask()))
        .collect())
}

/// Right cosets `Hg`, ordered by their minimal element.
pub fn right_cosets(group: &Arc<FiniteGroup>, subgroup: &Subgroup) -> CosetSpace {
    CosetSpace::new(Arc::clone(group), subgroup.clone())
}

/// `{g : g⁻¹ H g = H}`
pub fn normalizer(group: &FiniteGroup, subgroup: &Subgroup) -> Subgroup {
    let mask = subgroup.mask();
    Subgroup::from_mask_unchecked(
        group
            .elements()
            .filter(|&g| group.conjugate_set(mask, g) == mask)
            .collect(),
    )
}

/// Smallest `g` with `g⁻¹ H1 g = H2`, if any.
pub fn are_conjugate(group: &FiniteGroup, h1: &Subgroup, h2: &Subgroup) -> Option<usize> {
    if h1.order() != h2.order() {
        return None;
    }
    group
        .elements()
        .find(|&g| group.conjugate_set(h1.mask(), g) == h2.mask())
}
