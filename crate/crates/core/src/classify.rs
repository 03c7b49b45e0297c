//! Enumeration campaigns: the CM-threefold classification, CM-type pair
//! searches, the cyclic family of dual CM types, and the `y² = x⁹ - 1` check.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cmtype::{self, CMFactor, CMType, CosetSpace};
use crate::error::{Error, Result};
use crate::groups::{self, BaseGroup, CentralInvolution, ElemSet, FiniteGroup, GroupSpec, Subgroup};
use crate::mtgroup::{self, PairInput, ProjectionStatus};
use crate::zlattice::{self, IntMatrix, SpanStatus};

/// The four possible Galois groups of the normal closure of a sextic CM field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ThreefoldGroup {
    #[serde(rename = "C6")]
    Cyclic6,
    #[serde(rename = "D12")]
    Dihedral12,
    #[serde(rename = "C2xA4")]
    C2TimesA4,
    #[serde(rename = "C2xS4")]
    C2TimesS4,
}

impl ThreefoldGroup {
    pub const ALL: [ThreefoldGroup; 4] = [
        ThreefoldGroup::Cyclic6,
        ThreefoldGroup::Dihedral12,
        ThreefoldGroup::C2TimesA4,
        ThreefoldGroup::C2TimesS4,
    ];

    pub fn spec(self) -> GroupSpec {
        match self {
            ThreefoldGroup::Cyclic6 => GroupSpec::Cyclic { n: 6 },
            ThreefoldGroup::Dihedral12 => GroupSpec::Dihedral { n: 6 },
            ThreefoldGroup::C2TimesA4 => GroupSpec::C2Times { base: BaseGroup::A4 },
            ThreefoldGroup::C2TimesS4 => GroupSpec::C2Times { base: BaseGroup::S4 },
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ThreefoldGroup::Cyclic6 => "C6",
            ThreefoldGroup::Dihedral12 => "D12",
            ThreefoldGroup::C2TimesA4 => "C2xA4",
            ThreefoldGroup::C2TimesS4 => "C2xS4",
        }
    }
}

impl fmt::Display for ThreefoldGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ThreefoldGroup {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace(['/', '_', '-', ' '], "").as_str() {
            "c6" | "z6" | "cyclic6" => Ok(ThreefoldGroup::Cyclic6),
            "d6" | "d12" | "dihedral12" | "dihedral6" => Ok(ThreefoldGroup::Dihedral12),
            "c2xa4" | "z2xa4" => Ok(ThreefoldGroup::C2TimesA4),
            "c2xs4" | "z2xs4" => Ok(ThreefoldGroup::C2TimesS4),
            _ => Err(format!(
                "unknown group {s:?} (expected one of c6, d12, c2xa4, c2xs4)"
            )),
        }
    }
}

/// One examined `(H1, Φ1, H2, Φ2)` tuple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationRecord {
    pub group: String,
    pub h1: Vec<usize>,
    pub h2: Vec<usize>,
    /// Coset representatives.
    pub phi1: Vec<usize>,
    pub phi2: Vec<usize>,
    pub primitive1: bool,
    pub primitive2: bool,
    pub dim_mt_1: usize,
    pub dim_mt_2: usize,
    pub dim_mt_product: usize,
    pub status_pi1: ProjectionStatus,
    pub status_pi2: ProjectionStatus,
    /// Smallest `g` with `g⁻¹ H1 g = H2`.
    pub conjugacy_witness: Option<usize>,
    pub essentially_equal_after_transport: bool,
    pub violation: bool,
    /// Number of tuples this record stands for under symmetry reduction.
    pub orbit_size: usize,
}

impl ClassificationRecord {
    fn build(group_name: &str, t1: &CMType, t2: &CMType, orbit_size: usize) -> Self {
        let input = PairInput::new(CMFactor::new(t1.clone(), "A1"), CMFactor::new(t2.clone(), "A2"))
            .expect("both types come from the same group");
        let a = mtgroup::pair_analysis(&input);
        let (witness, same) = isogenous_after_transport(t1, t2);
        ClassificationRecord {
            group: group_name.to_string(),
            h1: t1.subgroup().elems().to_vec(),
            h2: t2.subgroup().elems().to_vec(),
            phi1: t1.representatives(),
            phi2: t2.representatives(),
            primitive1: cmtype::is_primitive(t1),
            primitive2: cmtype::is_primitive(t2),
            dim_mt_1: a.dim_mt_1,
            dim_mt_2: a.dim_mt_2,
            dim_mt_product: a.dim_mt_product,
            status_pi1: a.status_pi1,
            status_pi2: a.status_pi2,
            conjugacy_witness: witness,
            essentially_equal_after_transport: same,
            violation: a.dims_equal() && !same,
            orbit_size,
        }
    }

    pub fn dims_equal(&self) -> bool {
        self.dim_mt_product == self.dim_mt_1 && self.dim_mt_product == self.dim_mt_2
    }

    /// Rebuilds the CM types of this record inside `group`.
    pub fn cm_types(&self, group: &Arc<FiniteGroup>, rho: CentralInvolution) -> Result<(CMType, CMType)> {
        let build = |h: &[usize], reps: &[usize]| -> Result<CMType> {
            let sub = Subgroup::new(group, h)?;
            let space = Arc::new(groups::right_cosets(group, &sub));
            let phi: Vec<usize> = reps.iter().map(|&r| space.coset_of(r)).collect();
            cmtype::validate_cm_type(&space, &phi, rho)
        };
        Ok((build(&self.h1, &self.phi1)?, build(&self.h2, &self.phi2)?))
    }

    /// Recomputes the record from scratch and compares.
    pub fn revalidate(&self, group: &Arc<FiniteGroup>, rho: CentralInvolution) -> Result<bool> {
        let (t1, t2) = self.cm_types(group, rho)?;
        Ok(ClassificationRecord::build(&self.group, &t1, &t2, self.orbit_size) == *self)
    }
}

/// Whether `H1`, `H2` are conjugate and, if so, whether `Φ1` transported to
/// `H2\G` is essentially equal to `Φ2`. The answer does not depend on which
/// conjugating element is used.
pub fn isogenous_after_transport(t1: &CMType, t2: &CMType) -> (Option<usize>, bool) {
    let g = t1.group();
    let Some(w) = groups::are_conjugate(g, t1.subgroup(), t2.subgroup()) else {
        return (None, false);
    };
    let moved = cmtype::transport(t1, w, t2.subgroup()).expect("w conjugates H1 onto H2");
    let same = cmtype::essentially_equal(&moved, t2)
        .expect("same coset space")
        .is_some();
    (Some(w), same)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyOptions {
    pub groups: Vec<ThreefoldGroup>,
    /// Worker threads; results never depend on this, so it is not echoed.
    #[serde(skip, default = "one")]
    pub jobs: usize,
    pub symmetry_reduction: bool,
    /// Keep every record, not only violations.
    pub full_records: bool,
    /// Restrict to primitive CM types (simple abelian varieties).
    pub primitive_only: bool,
    /// Record wall-clock time in the report.
    pub timing: bool,
}

fn one() -> usize {
    1
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            groups: ThreefoldGroup::ALL.to_vec(),
            jobs: 1,
            symmetry_reduction: false,
            full_records: false,
            primitive_only: false,
            timing: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSummary {
    pub group: ThreefoldGroup,
    pub order: usize,
    /// Index-6 subgroups not containing complex conjugation.
    pub subgroups: usize,
    pub cm_types: usize,
    pub primitive_cm_types: usize,
    pub tuples: usize,
    /// Analyses actually run (differs from `tuples` under symmetry reduction).
    pub analyses: usize,
    pub equal_dims: usize,
    pub violations: usize,
    /// Distinct `dim MT(A)` values over primitive / non-primitive single types.
    pub primitive_single_dims: Vec<usize>,
    pub nonprimitive_single_dims: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub settings: ClassifyOptions,
    pub groups_examined: usize,
    pub total_tuples: usize,
    pub equal_dims: usize,
    pub violations: usize,
    pub groups: Vec<GroupSummary>,
    pub records: Vec<ClassificationRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

/// A CM-type pair tuple, as element sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TupleKey {
    pub h1: ElemSet,
    pub lift1: ElemSet,
    pub h2: ElemSet,
    pub lift2: ElemSet,
}

/// Orbit of a tuple under factor swap, complex conjugation of either type,
/// and simultaneous transport along conjugation by any `g ∈ G`. Dimensions,
/// statuses, and the violation predicate are constant on orbits.
pub fn tuple_orbit(group: &FiniteGroup, rho: CentralInvolution, key: TupleKey) -> BTreeSet<TupleKey> {
    let r = rho.elem();
    let mut seen = BTreeSet::from([key]);
    let mut stack = vec![key];
    while let Some(k) = stack.pop() {
        let mut next = vec![
            TupleKey {
                h1: k.h2,
                lift1: k.lift2,
                h2: k.h1,
                lift2: k.lift1,
            },
            TupleKey {
                lift1: group.left_translate(r, k.lift1),
                ..k
            },
            TupleKey {
                lift2: group.left_translate(r, k.lift2),
                ..k
            },
        ];
        for g in group.elements() {
            let gi = group.inv(g);
            next.push(TupleKey {
                h1: group.conjugate_set(k.h1, g),
                lift1: group.left_translate(gi, k.lift1),
                h2: group.conjugate_set(k.h2, g),
                lift2: group.left_translate(gi, k.lift2),
            });
        }
        for n in next {
            if seen.insert(n) {
                stack.push(n);
            }
        }
    }
    seen
}

/// Canonical orbit representatives (orbit minima) with orbit sizes, in the
/// order they appear in `tuples`. Orbits are taken inside `G`; callers pass
/// tuple sets closed under the symmetries.
pub fn reduce_tuples(group: &FiniteGroup, rho: CentralInvolution, tuples: &[TupleKey]) -> Vec<(TupleKey, usize)> {
    let mut covered: BTreeSet<TupleKey> = BTreeSet::new();
    let mut reps = Vec::new();
    for &t in tuples {
        if covered.contains(&t) {
            continue;
        }
        let orbit = tuple_orbit(group, rho, t);
        let min = *orbit.iter().next().expect("orbit contains t");
        reps.push((min, orbit.len()));
        covered.extend(orbit);
    }
    reps.sort();
    reps
}

struct TypeData {
    cm_type: CMType,
    lift: ElemSet,
    primitive: bool,
    dim: usize,
}

fn pool(jobs: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool")
}

/// Exhaustive CM-threefold classification over the chosen catalog groups.
pub fn classify_threefolds(options: &ClassifyOptions) -> CampaignReport {
    let start = Instant::now();
    let workers = pool(options.jobs);
    let mut summaries = Vec::new();
    let mut records = Vec::new();
    let mut chosen = options.groups.clone();
    chosen.sort();
    chosen.dedup();

    for which in chosen {
        let group = Arc::new(groups::make_group(&which.spec()).expect("catalog groups are valid"));
        let rhos = groups::central_involutions(&group);
        assert_eq!(rhos.len(), 1, "catalog groups have a unique central involution");
        let rho = rhos[0];
        let subs = groups::subgroups_of_order(&group, group.order() / 6, Some(rho))
            .expect("6 divides the order");

        let mut types: Vec<TypeData> = Vec::new();
        let mut all_types = 0;
        for h in &subs {
            let space = Arc::new(groups::right_cosets(&group, h));
            for t in cmtype::enumerate_cm_types(&space, rho).expect("rho not in H") {
                all_types += 1;
                let primitive = cmtype::is_primitive(&t);
                if options.primitive_only && !primitive {
                    continue;
                }
                types.push(TypeData {
                    lift: cmtype::lift(&t),
                    primitive,
                    dim: mtgroup::mt_dimension(&t).0,
                    cm_type: t,
                });
            }
        }

        let dims_for = |want: bool| -> Vec<usize> {
            let set: BTreeSet<usize> = types.iter().filter(|t| t.primitive == want).map(|t| t.dim).collect();
            set.into_iter().collect()
        };

        let pairs: Vec<(usize, usize)> = (0..types.len())
            .flat_map(|i| (0..types.len()).map(move |j| (i, j)))
            .collect();
        let tuples = pairs.len();

        let tasks: Vec<(usize, usize, usize)> = if options.symmetry_reduction {
            let key_of = |&(i, j): &(usize, usize)| TupleKey {
                h1: types[i].cm_type.subgroup().mask(),
                lift1: types[i].lift,
                h2: types[j].cm_type.subgroup().mask(),
                lift2: types[j].lift,
            };
            let index: std::collections::HashMap<TupleKey, (usize, usize)> =
                pairs.iter().map(|p| (key_of(p), *p)).collect();
            let keys: Vec<TupleKey> = pairs.iter().map(key_of).collect();
            reduce_tuples(&group, rho, &keys)
                .into_iter()
                .map(|(k, size)| {
                    let (i, j) = index[&k];
                    (i, j, size)
                })
                .collect()
        } else {
            pairs.iter().map(|&(i, j)| (i, j, 1)).collect()
        };

        let results: Vec<ClassificationRecord> = workers.install(|| {
            tasks
                .par_iter()
                .map(|&(i, j, size)| {
                    ClassificationRecord::build(which.name(), &types[i].cm_type, &types[j].cm_type, size)
                })
                .collect()
        });

        let equal_dims = results.iter().filter(|r| r.dims_equal()).map(|r| r.orbit_size).sum();
        let violations = results.iter().filter(|r| r.violation).map(|r| r.orbit_size).sum();
        summaries.push(GroupSummary {
            group: which,
            order: group.order(),
            subgroups: subs.len(),
            cm_types: all_types,
            primitive_cm_types: types.iter().filter(|t| t.primitive).count(),
            tuples,
            analyses: results.len(),
            equal_dims,
            violations,
            primitive_single_dims: dims_for(true),
            nonprimitive_single_dims: dims_for(false),
        });
        records.extend(
            results
                .into_iter()
                .filter(|r| options.full_records || r.violation),
        );
    }

    CampaignReport {
        settings: options.clone(),
        groups_examined: summaries.len(),
        total_tuples: summaries.iter().map(|s| s.tuples).sum(),
        equal_dims: summaries.iter().map(|s| s.equal_dims).sum(),
        violations: summaries.iter().map(|s| s.violations).sum(),
        groups: summaries,
        records,
        elapsed_ms: options.timing.then(|| start.elapsed().as_millis() as u64),
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchFilters {
    pub primitive: bool,
    pub essentially_different: bool,
}

/// All CM-type pairs on `H1\G × H2\G` whose projections both reach `mode`.
pub fn search_pairs(
    group: &Arc<FiniteGroup>,
    rho: CentralInvolution,
    h1: &Subgroup,
    h2: &Subgroup,
    mode: ProjectionStatus,
    require: SearchFilters,
    jobs: usize,
) -> Result<Vec<ClassificationRecord>> {
    let space1 = Arc::new(groups::right_cosets(group, h1));
    let space2 = if h1 == h2 {
        Arc::clone(&space1)
    } else {
        Arc::new(groups::right_cosets(group, h2))
    };
    let prepare = |space: &Arc<CosetSpace>| -> Result<Vec<(CMType, IntMatrix, usize)>> {
        Ok(cmtype::enumerate_cm_types(space, rho)?
            .into_iter()
            .filter(|t| !require.primitive || cmtype::is_primitive(t))
            .map(|t| {
                let block = mtgroup::reflex_norm_block(&t);
                let dim = zlattice::rank(&block);
                (t, block, dim)
            })
            .collect())
    };
    let types1 = prepare(&space1)?;
    let types2 = prepare(&space2)?;
    let pairs: Vec<(usize, usize)> = (0..types1.len())
        .flat_map(|i| (0..types2.len()).map(move |j| (i, j)))
        .collect();
    let name = group.name().to_string();
    let found: Vec<Option<ClassificationRecord>> = pool(jobs).install(|| {
        pairs
            .par_iter()
            .map(|&(i, j)| {
                let (a, block_a, dim_a) = &types1[i];
                let (b, block_b, dim_b) = &types2[j];
                // both projections are at least isogenies iff all three ranks agree
                if dim_a != dim_b {
                    return None;
                }
                if zlattice::rank(&block_a.hstack(block_b)) != *dim_a {
                    return None;
                }
                if require.essentially_different && isogenous_after_transport(a, b).1 {
                    return None;
                }
                let rec = ClassificationRecord::build(&name, a, b, 1);
                (rec.status_pi1.at_least(mode) && rec.status_pi2.at_least(mode)).then_some(rec)
            })
            .collect()
    });
    Ok(found.into_iter().flatten().collect())
}

/// The two dual CM types of the cyclic family on `Z/g × Z/2`, and the CM
/// types they are dual to.
#[derive(Clone, Debug)]
pub struct FamilyTypes {
    pub g: usize,
    pub r: usize,
    pub h: usize,
    pub group: Arc<FiniteGroup>,
    pub rho: CentralInvolution,
    pub phi1_star: CMType,
    pub phi2_star: CMType,
    pub phi1: CMType,
    pub phi2: CMType,
}

fn smallest_prime_not_dividing(g: usize) -> usize {
    (2..)
        .find(|&p: &usize| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0) && !g.is_multiple_of(p))
        .expect("infinitely many primes")
}

/// Elements are `(i, b)` with index `2i + b`: `σ_i = (i, 0)`, `σ̄_i = (i, 1)`.
pub fn family_types(g: usize) -> Result<FamilyTypes> {
    if matches!(g, 0..=4 | 6) {
        return Err(Error::UnsupportedG(g));
    }
    let r = smallest_prime_not_dividing(g);
    let h = r;
    let group = Arc::new(groups::make_group(&GroupSpec::Product {
        factors: vec![GroupSpec::Cyclic { n: g }, GroupSpec::Cyclic { n: 2 }],
    })?);
    let rho = CentralInvolution::new(&group, 1)?;
    let sigma = |i: usize| 2 * (i % g);
    let sigma_bar = |i: usize| 2 * (i % g) + 1;
    let dual = |step: usize| -> ElemSet {
        (0..g)
            .map(|i| if i < r { sigma_bar(step * i) } else { sigma(step * i) })
            .collect()
    };
    let trivial = Arc::new(groups::right_cosets(&group, &Subgroup::trivial(&group)));
    let phi1_star = CMType::from_lift(&trivial, dual(1), rho)?;
    let phi2_star = CMType::from_lift(&trivial, dual(h), rho)?;
    let phi1 = cmtype::reflex(&phi1_star).reflex_type;
    let phi2 = cmtype::reflex(&phi2_star).reflex_type;
    Ok(FamilyTypes {
        g,
        r,
        h,
        group,
        rho,
        phi1_star,
        phi2_star,
        phi1,
        phi2,
    })
}

/// Reference pair matrix for `X × E` (rows and the first six columns indexed
/// by `σ1, σ2, σ4, σ5, σ7, σ8`; last two columns by the embeddings of `Q(ζ3)`).
pub const SHIODA_MATRIX: [[i64; 8]; 6] = [
    [1, 1, 1, 0, 0, 0, 1, 0],
    [0, 1, 1, 0, 0, 1, 0, 1],
    [0, 0, 1, 0, 1, 1, 1, 0],
    [1, 1, 0, 1, 0, 0, 0, 1],
    [1, 0, 0, 1, 1, 0, 1, 0],
    [0, 0, 0, 1, 1, 1, 0, 1],
];

/// Two right-kernel vectors of [`SHIODA_MATRIX`].
pub const SHIODA_KERNEL_VECTORS: [[i64; 8]; 2] = [[0, 0, 1, 0, 1, -1, -1, 0], [0, 0, 0, 1, -1, 1, 0, -1]];

/// `X` (CM by `Q(ζ9)`, type `{σ1, σ2, σ4}`) and `E` (CM by `Q(ζ3)`) inside
/// `Gal(Q(ζ9)/Q) ≅ (Z/9)^×`.
pub fn shioda_input() -> PairInput {
    let group = Arc::new(groups::make_group(&GroupSpec::UnitGroupMod { n: 9 }).expect("valid"));
    let rho = CentralInvolution::new(&group, 5).expect("σ8 is complex conjugation");
    let x_space = Arc::new(groups::right_cosets(&group, &Subgroup::trivial(&group)));
    let x = cmtype::validate_cm_type(&x_space, &[0, 1, 2], rho).expect("valid CM type");
    let h = Subgroup::new(&group, &[0, 2, 4]).expect("{σ1, σ4, σ7}");
    let e_space = Arc::new(groups::right_cosets(&group, &h));
    let e = cmtype::validate_cm_type(&e_space, &[0], rho).expect("valid CM type");
    PairInput::new(CMFactor::new(x, "X"), CMFactor::new(e, "E")).expect("same group")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assertion {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiodaReport {
    pub assertions: Vec<Assertion>,
    pub reflex_type: Vec<String>,
    pub matrix: IntMatrix,
    pub dim_mt_x: usize,
    pub dim_mt_e: usize,
    pub dim_mt_product: usize,
    pub status_pi1: ProjectionStatus,
    pub status_pi2: ProjectionStatus,
}

impl ShiodaReport {
    pub fn all_passed(&self) -> bool {
        self.assertions.iter().all(|a| a.passed)
    }
}

pub fn verify_shioda() -> ShiodaReport {
    let input = shioda_input();
    let group = Arc::clone(&input.group);
    let mut assertions = Vec::new();
    let mut check = |name: &str, passed: bool, detail: String| {
        assertions.push(Assertion {
            name: name.to_string(),
            passed,
            detail,
        })
    };

    let rf = cmtype::reflex(&input.factor1.cm_type);
    let reflex_labels: Vec<String> = rf.reflex_type.representatives().iter().map(|&x| group.label(x).to_string()).collect();
    check(
        "reflex type of X is {σ1, σ5, σ7}",
        reflex_labels == ["σ1", "σ5", "σ7"] && rf.reflex_group.order() == 1,
        format!("reflex group order {}, reflex type {{{}}}", rf.reflex_group.order(), reflex_labels.join(", ")),
    );

    let matrix = mtgroup::pair_matrix(&input);
    let golden = IntMatrix::from_rows(&SHIODA_MATRIX);
    check(
        "pair matrix equals the reference 6x8 matrix",
        matrix == golden,
        format!("computed {}x{} matrix", matrix.rows(), matrix.cols()),
    );

    let vectors: Vec<Vec<BigInt>> = SHIODA_KERNEL_VECTORS
        .iter()
        .map(|v| v.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let in_kernel = vectors
        .iter()
        .all(|v| matrix.mul_vec(v).iter().all(|x| x == &BigInt::from(0)));
    check(
        "reference vectors lie in the right kernel",
        in_kernel,
        "M·v = 0 checked exactly for both vectors".to_string(),
    );

    let mut gens = IntMatrix::from_big_rows(vectors, 8);
    let block: Vec<Vec<i64>> = (0..6)
        .map(|j| (0..8).map(|c| i64::from(c == j)).collect())
        .collect();
    gens = gens.vstack(&IntMatrix::from_rows(&block));
    let span = zlattice::span_status(&gens, 8);
    check(
        "reference vectors and T_F x {0} span the full lattice",
        matches!(span, SpanStatus::Full { .. }),
        format!("{span:?}"),
    );

    let analysis = mtgroup::pair_analysis(&input);
    check(
        "projection MT(X x E) -> MT(X) is ISO",
        analysis.status_pi1 == ProjectionStatus::Iso,
        format!(
            "status {}, dim MT(X x E) = {}",
            analysis.status_pi1, analysis.dim_mt_product
        ),
    );

    ShiodaReport {
        assertions,
        reflex_type: reflex_labels,
        matrix,
        dim_mt_x: analysis.dim_mt_1,
        dim_mt_e: analysis.dim_mt_2,
        dim_mt_product: analysis.dim_mt_product,
        status_pi1: analysis.status_pi1,
        status_pi2: analysis.status_pi2,
    }
}
