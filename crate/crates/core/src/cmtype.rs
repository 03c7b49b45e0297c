//! CM types as subsets of a right coset space `H\G`.
//!
//! Conventions: `G` acts on the field on the right, embeddings of the fixed
//! field of `H` are right cosets `Hg`, and an automorphism of that field
//! (represented by `n` in the normalizer of `H`) acts on embeddings by
//! `Hg ↦ H(ng)`. Complex conjugation `ρ` is central, so `Hgρ = Hρg`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groups::{self, CentralInvolution, ElemSet, FiniteGroup, Subgroup};

/// The right cosets of a subgroup, ordered by minimal element.
#[derive(Clone)]
pub struct CosetSpace {
    group: Arc<FiniteGroup>,
    subgroup: Subgroup,
    cosets: Vec<Vec<usize>>,
    masks: Vec<ElemSet>,
    coset_of: Vec<usize>,
}

impl fmt::Debug for CosetSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CosetSpace({:?} \\ {})", self.subgroup, self.group.name())
    }
}

impl PartialEq for CosetSpace {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.group, &other.group) || self.group == other.group)
            && self.subgroup == other.subgroup
    }
}

impl Eq for CosetSpace {}

impl CosetSpace {
    pub(crate) fn new(group: Arc<FiniteGroup>, subgroup: Subgroup) -> Self {
        let n = group.order();
        let mut coset_of = vec![usize::MAX; n];
        let mut cosets = Vec::new();
        let mut masks = Vec::new();
        // Scanning in index order makes the first unassigned element the
        // minimum of its coset.
        for g in 0..n {
            if coset_of[g] != usize::MAX {
                continue;
            }
            let mask: ElemSet = subgroup.elems().iter().map(|&h| group.mul(h, g)).collect();
            for x in mask.iter() {
                coset_of[x] = cosets.len();
            }
            cosets.push(mask.to_vec());
            masks.push(mask);
        }
        CosetSpace {
            group,
            subgroup,
            cosets,
            masks,
            coset_of,
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }

    pub fn cosets(&self) -> &[Vec<usize>] {
        &self.cosets
    }

    pub fn coset_mask(&self, c: usize) -> ElemSet {
        self.masks[c]
    }

    /// Minimal element of coset `c`.
    pub fn representative(&self, c: usize) -> usize {
        self.cosets[c][0]
    }

    pub fn representatives(&self) -> Vec<usize> {
        self.cosets.iter().map(|c| c[0]).collect()
    }

    pub fn coset_of(&self, g: usize) -> usize {
        self.coset_of[g]
    }

    /// Union of the given cosets.
    pub fn expand(&self, cosets: &[usize]) -> ElemSet {
        cosets
            .iter()
            .fold(ElemSet::empty(), |acc, &c| acc.union(self.masks[c]))
    }

    /// Coset indices making up `set`, or `None` if `set` is not a union of cosets.
    pub fn cosets_of_set(&self, set: ElemSet) -> Option<Vec<usize>> {
        let mut out: Vec<usize> = set.iter().map(|g| self.coset_of[g]).collect();
        out.sort_unstable();
        out.dedup();
        (self.expand(&out) == set).then_some(out)
    }

    pub fn coset_label(&self, c: usize) -> String {
        let rep = self.representative(c);
        if self.subgroup.order() == 1 {
            self.group.label(rep).to_string()
        } else {
            format!("H{}", self.group.label(rep))
        }
    }
}

/// A CM type: one coset from each `ρ`-orbit of `H\G`.
#[derive(Clone, PartialEq, Eq)]
pub struct CMType {
    space: Arc<CosetSpace>,
    phi: Vec<usize>,
    rho: CentralInvolution,
}

impl fmt::Debug for CMType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CMType({:?}, {})", self.space.subgroup(), self.describe())
    }
}

impl CMType {
    pub fn space(&self) -> &Arc<CosetSpace> {
        &self.space
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.space.group()
    }

    pub fn subgroup(&self) -> &Subgroup {
        self.space.subgroup()
    }

    /// Sorted coset indices.
    pub fn phi(&self) -> &[usize] {
        &self.phi
    }

    pub fn rho(&self) -> CentralInvolution {
        self.rho
    }

    /// Half the number of embeddings.
    pub fn dimension(&self) -> usize {
        self.phi.len()
    }

    pub fn representatives(&self) -> Vec<usize> {
        self.phi.iter().map(|&c| self.space.representative(c)).collect()
    }

    /// `{σ1, σ2, σ4}`-style rendering via element labels.
    pub fn describe(&self) -> String {
        let parts: Vec<String> = self.phi.iter().map(|&c| self.space.coset_label(c)).collect();
        format!("{{{}}}", parts.join(", "))
    }

    /// The complex-conjugate type `Φρ`.
    pub fn conjugate(&self) -> CMType {
        let mut phi: Vec<usize> = self
            .phi
            .iter()
            .map(|&c| conjugate_coset(&self.space, c, self.rho))
            .collect();
        phi.sort_unstable();
        CMType {
            space: Arc::clone(&self.space),
            phi,
            rho: self.rho,
        }
    }

    /// Builds the CM type whose lift is `lift`.
    pub fn from_lift(space: &Arc<CosetSpace>, lift: ElemSet, rho: CentralInvolution) -> Result<CMType> {
        let phi = space
            .cosets_of_set(lift)
            .ok_or_else(|| Error::NotACMType("lift is not a union of cosets".into()))?;
        validate_cm_type(space, &phi, rho)
    }
}

fn conjugate_coset(space: &CosetSpace, c: usize, rho: CentralInvolution) -> usize {
    space.coset_of(space.group().mul(space.representative(c), rho.elem()))
}

/// Checks `Φ ∩ Φρ = ∅` and `Φ ∪ Φρ = H\G`.
pub fn validate_cm_type(space: &Arc<CosetSpace>, phi: &[usize], rho: CentralInvolution) -> Result<CMType> {
    if space.subgroup().contains(rho.elem()) {
        return Err(Error::RhoInSubgroup(rho.elem()));
    }
    let n = space.len();
    let mut sorted = phi.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != phi.len() {
        return Err(Error::NotACMType("repeated coset".into()));
    }
    if let Some(&bad) = sorted.iter().find(|&&c| c >= n) {
        return Err(Error::NotACMType(format!("coset index {bad} out of range")));
    }
    if 2 * sorted.len() != n {
        return Err(Error::NotACMType(format!(
            "{} cosets chosen out of {n}; a CM type picks exactly half",
            sorted.len()
        )));
    }
    for &c in &sorted {
        let cc = conjugate_coset(space, c, rho);
        if sorted.binary_search(&cc).is_ok() {
            return Err(Error::NotACMType(format!(
                "contains the conjugate pair {} and {}",
                space.coset_label(c),
                space.coset_label(cc)
            )));
        }
    }
    Ok(CMType {
        space: Arc::clone(space),
        phi: sorted,
        rho,
    })
}

/// All `2^g` CM types on `space`, sorted lexicographically by coset set.
pub fn enumerate_cm_types(space: &Arc<CosetSpace>, rho: CentralInvolution) -> Result<Vec<CMType>> {
    if space.subgroup().contains(rho.elem()) {
        return Err(Error::RhoInSubgroup(rho.elem()));
    }
    let pairs: Vec<(usize, usize)> = (0..space.len())
        .map(|c| (c, conjugate_coset(space, c, rho)))
        .filter(|(c, cc)| c < cc)
        .collect();
    let g = pairs.len();
    let mut all: Vec<Vec<usize>> = (0u64..1 << g)
        .map(|choice| {
            let mut phi: Vec<usize> = pairs
                .iter()
                .enumerate()
                .map(|(i, &(a, b))| if choice >> i & 1 == 0 { a } else { b })
                .collect();
            phi.sort_unstable();
            phi
        })
        .collect();
    all.sort();
    Ok(all
        .into_iter()
        .map(|phi| CMType {
            space: Arc::clone(space),
            phi,
            rho,
        })
        .collect())
}

/// `Φ̃ = {φ ∈ G : Hφ ∈ Φ}`
pub fn lift(t: &CMType) -> ElemSet {
    t.space.expand(&t.phi)
}

/// Reflex group, reflex CM type, and the element-level lift `Φ̃⁻¹`.
#[derive(Clone, Debug)]
pub struct ReflexDatum {
    pub reflex_group: Subgroup,
    pub reflex_space: Arc<CosetSpace>,
    pub reflex_type: CMType,
    pub lift_inverse: ElemSet,
}

pub fn reflex(t: &CMType) -> ReflexDatum {
    let g = t.group();
    let lifted = lift(t);
    let reflex_group = Subgroup::from_mask_unchecked(g.right_stabilizer(lifted));
    let lift_inverse = g.inverse_set(lifted);
    let reflex_space = Arc::new(groups::right_cosets(g, &reflex_group));
    let reflex_type = CMType::from_lift(&reflex_space, lift_inverse, t.rho)
        .expect("the inverse lift is a CM type on the reflex coset space");
    ReflexDatum {
        reflex_group,
        reflex_space,
        reflex_type,
        lift_inverse,
    }
}

/// True iff the left stabilizer of `Φ̃` is exactly `H`.
pub fn is_primitive(t: &CMType) -> bool {
    t.group().left_stabilizer(lift(t)) == t.subgroup().mask()
}

/// Smallest `n ∈ N_G(H)` with `{H(ng) : Hg ∈ Φ1} = Φ2`, if any.
pub fn essentially_equal(t1: &CMType, t2: &CMType) -> Result<Option<usize>> {
    if t1.space != t2.space {
        return Err(Error::SpaceMismatch);
    }
    let g = t1.group();
    let l1 = lift(t1);
    let l2 = lift(t2);
    let normalizer = groups::normalizer(g, t1.subgroup());
    Ok(normalizer
        .elems()
        .iter()
        .copied()
        .find(|&n| g.left_translate(n, l1) == l2))
}

/// Moves a CM type along the field isomorphism induced by conjugation:
/// with `g⁻¹ H g = target`, the transported lift is `g⁻¹ Φ̃`.
pub fn transport(t: &CMType, g: usize, target: &Subgroup) -> Result<CMType> {
    let group = t.group();
    group.check_element(g)?;
    if group.conjugate_set(t.subgroup().mask(), g) != target.mask() {
        return Err(Error::NotAConjugation(g));
    }
    let space = if target == t.subgroup() {
        Arc::clone(&t.space)
    } else {
        Arc::new(groups::right_cosets(group, target))
    };
    let moved = group.left_translate(group.inv(g), lift(t));
    CMType::from_lift(&space, moved, t.rho)
}

/// One CM abelian variety, described combinatorially.
#[derive(Clone, Debug)]
pub struct CMFactor {
    pub cm_type: CMType,
    pub label: String,
}

impl CMFactor {
    pub fn new(cm_type: CMType, label: impl Into<String>) -> Self {
        CMFactor {
            cm_type,
            label: label.into(),
        }
    }

    pub fn dimension(&self) -> usize {
        self.cm_type.dimension()
    }
}
