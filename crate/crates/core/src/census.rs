//! Exhaustive enumeration of nearrings with identity on a small group.
//!
//! A nearring with identity `i` on `G` is a family `x -> lambda_x` of
//! endomorphisms with `lambda_x(i) = x` and `lambda_{lambda_x(y)} =
//! lambda_x lambda_y`. The search assigns `lambda_x` in ascending element
//! order from the candidates with the right value at `i`, and propagates
//! the closure rule after every assignment: if `lambda_x = e` and
//! `lambda_y = f` then `lambda_{e(y)}` must be `e f` and `lambda_{f(x)}`
//! must be `f e`. A clash undoes the branch through a trail.
//!
//! Root branches (identity, first free choice) run in parallel; results are
//! merged in sorted order, so output does not depend on the thread count.

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::audit::{structural_audit, StructuralAudit};
use crate::error::{Error, Result};
use crate::group::{Element, Group, GroupDescriptor};
use crate::hom::{endomorphisms, EndomorphismMonoid};
use crate::iso::{automorphisms, classify_with, AutomorphismGroup};
use crate::nearring::Nearring;
use crate::properties::{is_local, is_zero_symmetric, unit_structure};

/// Orders the census accepts without `allow_large`.
pub const FEASIBLE_ORDERS: [usize; 2] = [8, 27];

pub const CENSUS_SCHEMA: &str = "census/1";
const CHECKPOINT_SCHEMA: &str = "census-checkpoint/1";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CensusFilter {
    /// Every nearring with identity.
    #[default]
    All,
    Local,
    LocalZeroSymmetric,
}

impl std::str::FromStr for CensusFilter {
    type Err = Error;
    fn from_str(s: &str) -> Result<CensusFilter> {
        match s {
            "all" => Ok(CensusFilter::All),
            "local" => Ok(CensusFilter::Local),
            "local-zero-symmetric" | "local-zs" => Ok(CensusFilter::LocalZeroSymmetric),
            _ => Err(Error::Parse(format!("unknown census filter {s:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CensusOptions {
    /// Search one identity per automorphism orbit of maximal-order elements.
    pub normalize_identity: bool,
    pub filter: CensusFilter,
    /// Worker threads; `None` uses the rayon default.
    pub jobs: Option<usize>,
    pub checkpoint: Option<PathBuf>,
    pub time_budget: Option<Duration>,
    /// Cut branches whose partial assignment already shows that the
    /// non-units cannot form a subgroup. Sound only for local filters.
    pub prune_nonlocal: bool,
    /// Lift the order restriction.
    pub allow_large: bool,
}

impl Default for CensusOptions {
    fn default() -> CensusOptions {
        CensusOptions {
            normalize_identity: true,
            filter: CensusFilter::All,
            jobs: None,
            checkpoint: None,
            time_budget: None,
            prune_nonlocal: false,
            allow_large: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusClass {
    pub identity: Element,
    pub local: bool,
    pub zero_symmetric: bool,
    pub unit_group_order: usize,
    /// Tables found by the search that fall into this class.
    pub members_found: usize,
    /// Smallest table of the class, row-major.
    pub table: Vec<u32>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusCounts {
    pub with_identity: usize,
    pub local: usize,
    pub local_zero_symmetric: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusResult {
    pub schema: String,
    pub group: GroupDescriptor,
    pub normalize_identity: bool,
    pub prune_nonlocal: bool,
    pub filter: CensusFilter,
    pub identity_candidates: Vec<Element>,
    pub endomorphisms: usize,
    pub tables_found: usize,
    /// Class counts among the tables the search produced.
    pub counts: CensusCounts,
    /// Classes passing `filter`, sorted by table.
    pub classes: Vec<CensusClass>,
}

impl CensusResult {
    pub fn nearrings(&self) -> Result<Vec<Nearring>> {
        let g = Arc::new(Group::new(self.group)?);
        self.classes
            .iter()
            .map(|c| {
                Nearring::from_table(g.clone(), c.table.clone())?
                    .with_identity(&c.identity)
                    .map(|r| r.with_label(format!("{}#{}", self.group, c.identity)))
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct RootKey {
    identity: usize,
    branch: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct CompletedRoot {
    identity: usize,
    branch: usize,
    tables: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct Checkpoint {
    schema: String,
    group: GroupDescriptor,
    normalize_identity: bool,
    prune_nonlocal: bool,
    completed: Vec<CompletedRoot>,
}

const NONE: u32 = u32::MAX;

/// Depth-first search state for one identity element.
struct Search<'a> {
    g: &'a Group,
    monoid: &'a EndomorphismMonoid,
    bijective: &'a [bool],
    /// `by_value[x]`: endomorphisms sending the identity to `x`.
    by_value: &'a [Vec<u32>],
    assign: Vec<u32>,
    trail: Vec<usize>,
    queue: Vec<(usize, u32)>,
    prune_nonlocal: bool,
    out: Vec<Vec<u32>>,
}

impl<'a> Search<'a> {
    fn new(ctx: &'a Context, prune_nonlocal: bool, identity: usize) -> Search<'a> {
        Search {
            g: &ctx.group,
            monoid: &ctx.monoid,
            bijective: &ctx.bijective,
            by_value: &ctx.by_value[identity],
            assign: vec![NONE; ctx.group.order()],
            trail: Vec::new(),
            queue: Vec::new(),
            prune_nonlocal,
            out: Vec::new(),
        }
    }

    fn push(&mut self, x: usize, e: u32) -> bool {
        match self.assign[x] {
            NONE => {
                self.queue.push((x, e));
                true
            }
            f => f == e,
        }
    }

    /// Among `x, y, x + y` exactly one unit is impossible when the
    /// non-units form a subgroup.
    fn locality_clash(&self, x: usize) -> bool {
        let unit = |z: usize| self.bijective[self.assign[z] as usize];
        let ux = unit(x);
        self.trail.iter().any(|&y| {
            let uy = unit(y);
            [self.g.add(x, y), self.g.add(y, x)].into_iter().any(|s| {
                self.assign[s] != NONE && (ux as u8 + uy as u8 + unit(s) as u8) == 1
            })
        }) || {
            let nx = self.g.neg(x);
            self.assign[nx] != NONE && unit(nx) != ux
        }
    }

    /// Assigns `lambda_x = e` and everything it forces.
    fn assign(&mut self, x: usize, e: u32) -> bool {
        self.queue.clear();
        self.queue.push((x, e));
        while let Some((x, e)) = self.queue.pop() {
            match self.assign[x] {
                NONE => {}
                f if f == e => continue,
                _ => return false,
            }
            self.assign[x] = e;
            self.trail.push(x);
            if self.prune_nonlocal && self.locality_clash(x) {
                return false;
            }
            let ee = self.monoid.get(e as usize);
            for k in 0..self.trail.len() {
                let y = self.trail[k];
                let f = self.assign[y];
                let fe = self.monoid.get(f as usize);
                let ok = self.push(ee.apply(y), self.monoid.compose(e as usize, f as usize) as u32)
                    && self.push(fe.apply(x), self.monoid.compose(f as usize, e as usize) as u32);
                if !ok {
                    return false;
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        for x in self.trail.drain(mark..) {
            self.assign[x] = NONE;
        }
    }

    fn first_free(&self) -> Option<usize> {
        self.assign.iter().position(|&a| a == NONE)
    }

    fn record(&mut self) {
        let n = self.g.order();
        let mut t = Vec::with_capacity(n * n);
        for x in 0..n {
            let e = self.monoid.get(self.assign[x] as usize);
            t.extend((0..n).map(|y| e.apply(y) as u32));
        }
        self.out.push(t);
    }

    fn dfs(&mut self) {
        let Some(x) = self.first_free() else {
            self.record();
            return;
        };
        for k in 0..self.by_value[x].len() {
            let e = self.by_value[x][k];
            let mark = self.trail.len();
            if self.assign(x, e) {
                self.dfs();
            }
            self.undo(mark);
        }
    }

    /// Seeds `lambda_i = id`. Returns false if that already clashes.
    fn seed(&mut self, identity: usize, id_endo: u32) -> bool {
        self.assign(identity, id_endo)
    }
}

struct Context {
    group: Arc<Group>,
    monoid: EndomorphismMonoid,
    bijective: Vec<bool>,
    by_value: Vec<Vec<Vec<u32>>>,
    id_endo: u32,
}

impl Context {
    fn new(group: Arc<Group>, identities: &[usize]) -> Result<Context> {
        let monoid = endomorphisms(&group)?;
        let n = group.order();
        let bijective = monoid.iter().map(|e| e.is_bijective()).collect();
        let mut by_value = vec![Vec::new(); n];
        for &i in identities {
            let mut buckets = vec![Vec::new(); n];
            for (k, e) in monoid.iter().enumerate() {
                buckets[e.apply(i)].push(k as u32);
            }
            by_value[i] = buckets;
        }
        let id = crate::hom::Endomorphism::identity(n);
        let id_endo = monoid.position(&id).expect("identity map is an endomorphism") as u32;
        Ok(Context {
            group,
            monoid,
            bijective,
            by_value,
            id_endo,
        })
    }

    /// Branches of the search tree below `lambda_i = id`, one per candidate
    /// for the first element left free.
    fn roots(&self, identity: usize, prune: bool) -> Vec<RootKey> {
        let mut s = Search::new(self, prune, identity);
        if !s.seed(identity, self.id_endo) {
            return Vec::new();
        }
        match s.first_free() {
            None => vec![RootKey { identity, branch: 0 }],
            Some(x) => (0..s.by_value[x].len())
                .map(|branch| RootKey { identity, branch })
                .collect(),
        }
    }

    fn run_root(&self, key: &RootKey, prune: bool) -> Vec<Vec<u32>> {
        let mut s = Search::new(self, prune, key.identity);
        if !s.seed(key.identity, self.id_endo) {
            return Vec::new();
        }
        match s.first_free() {
            None => s.record(),
            Some(x) => {
                let e = s.by_value[x][key.branch];
                if s.assign(x, e) {
                    s.dfs();
                }
            }
        }
        s.out
    }
}

/// All tables of nearrings with identity `identity`, by plain search.
pub fn tables_with_identity(group: &Arc<Group>, identity: usize, prune_nonlocal: bool) -> Result<Vec<Vec<u32>>> {
    let ctx = Context::new(group.clone(), &[identity])?;
    let mut out: Vec<Vec<u32>> = ctx
        .roots(identity, prune_nonlocal)
        .par_iter()
        .flat_map_iter(|k| ctx.run_root(k, prune_nonlocal))
        .collect();
    out.sort();
    Ok(out)
}

fn identity_candidates(group: &Arc<Group>, aut: &AutomorphismGroup, normalize: bool) -> Vec<usize> {
    if !normalize {
        return (0..group.order()).collect();
    }
    let exp = group.exponent();
    let max_order: Vec<usize> = (0..group.order())
        .filter(|&x| group.element_order(x) == exp)
        .collect();
    aut.orbit_representatives(&max_order)
}

fn load_checkpoint(path: &PathBuf, fresh: &Checkpoint) -> Result<Vec<CompletedRoot>> {
    if !path.exists() {
        return Ok(Vec::new());
    }
    let cp: Checkpoint = serde_json::from_str(&fs::read_to_string(path)?)?;
    if cp.schema != CHECKPOINT_SCHEMA
        || cp.group != fresh.group
        || cp.normalize_identity != fresh.normalize_identity
        || cp.prune_nonlocal != fresh.prune_nonlocal
    {
        return Err(Error::Verification(format!(
            "checkpoint {} was written for a different census",
            path.display()
        )));
    }
    Ok(cp.completed)
}

fn save_checkpoint(path: &PathBuf, header: &Checkpoint, done: &[CompletedRoot]) -> Result<()> {
    let mut done = done.to_vec();
    done.sort_by_key(|c| (c.identity, c.branch));
    let cp = Checkpoint {
        completed: done,
        ..header.clone()
    };
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, serde_json::to_vec(&cp)?)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Runs the census on `desc`.
pub fn census(desc: GroupDescriptor, opts: &CensusOptions) -> Result<CensusResult> {
    if !opts.allow_large && !FEASIBLE_ORDERS.contains(&desc.order()) {
        return Err(Error::SizeCap {
            operation: "census (orders 8 and 27 only without an override)",
            order: desc.order(),
            cap: 27,
        });
    }
    if opts.prune_nonlocal && opts.filter == CensusFilter::All {
        return Err(Error::Verification(
            "pruning non-local branches requires a local filter".into(),
        ));
    }
    let run = || census_inner(desc, opts);
    match opts.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| Error::Verification(format!("thread pool: {e}")))?
            .install(run),
        None => run(),
    }
}

fn census_inner(desc: GroupDescriptor, opts: &CensusOptions) -> Result<CensusResult> {
    let started = Instant::now();
    let group = Arc::new(Group::new(desc)?);
    let aut = automorphisms(&group)?;
    let identities = identity_candidates(&group, &aut, opts.normalize_identity);
    let ctx = Context::new(group.clone(), &identities)?;
    let prune = opts.prune_nonlocal;
    let roots: Vec<RootKey> = identities.iter().flat_map(|&i| ctx.roots(i, prune)).collect();

    let header = Checkpoint {
        schema: CHECKPOINT_SCHEMA.into(),
        group: desc,
        normalize_identity: opts.normalize_identity,
        prune_nonlocal: prune,
        completed: Vec::new(),
    };
    let prior = match &opts.checkpoint {
        Some(path) => load_checkpoint(path, &header)?,
        None => Vec::new(),
    };
    let done_keys: BTreeMap<(usize, usize), ()> =
        prior.iter().map(|c| ((c.identity, c.branch), ())).collect();
    let completed = Mutex::new(prior);
    let pending: Vec<&RootKey> = roots
        .iter()
        .filter(|k| !done_keys.contains_key(&(k.identity, k.branch)))
        .collect();
    let out_of_time = || opts.time_budget.is_some_and(|b| started.elapsed() >= b);

    let first_error: Mutex<Option<Error>> = Mutex::new(None);
    pending.par_iter().for_each(|key| {
        if out_of_time() {
            return;
        }
        let tables = ctx.run_root(key, prune);
        let mut done = completed.lock().expect("checkpoint lock");
        done.push(CompletedRoot {
            identity: key.identity,
            branch: key.branch,
            tables,
        });
        if let Some(path) = &opts.checkpoint {
            if let Err(e) = save_checkpoint(path, &header, &done) {
                first_error.lock().expect("error lock").get_or_insert(e);
            }
        }
    });
    if let Some(e) = first_error.into_inner().expect("error lock") {
        return Err(e);
    }
    let completed = completed.into_inner().expect("checkpoint lock");
    if completed.len() < roots.len() {
        if let Some(path) = &opts.checkpoint {
            save_checkpoint(path, &header, &completed)?;
        }
        return Err(Error::Timeout {
            completed: completed.len(),
            total: roots.len(),
            checkpoint: opts
                .checkpoint
                .as_ref()
                .map_or_else(|| "(no path given)".into(), |p| p.display().to_string()),
        });
    }

    let mut tables: Vec<(usize, Vec<u32>)> = completed
        .into_iter()
        .flat_map(|c| c.tables.into_iter().map(move |t| (c.identity, t)))
        .collect();
    tables.sort();
    tables.dedup();
    let tables_found = tables.len();

    let nearrings: Vec<Nearring> = tables
        .into_iter()
        .map(|(i, t)| {
            let r = Nearring::from_table(group.clone(), t)?;
            r.with_identity(&group.element(i))
        })
        .collect::<Result<_>>()?;
    let partition = classify_with(&aut, &nearrings)?;

    let mut classes: Vec<CensusClass> = partition
        .classes
        .par_iter()
        .map(|members| {
            let rep = members
                .iter()
                .min_by(|&&a, &&b| nearrings[a].table().cmp(nearrings[b].table()))
                .copied()
                .expect("classes are non-empty");
            let r = &nearrings[rep];
            Ok(CensusClass {
                identity: r.identity().expect("identity set"),
                local: is_local(r)?,
                zero_symmetric: is_zero_symmetric(r),
                unit_group_order: unit_structure(r)?.units.len(),
                members_found: members.len(),
                table: r.table().to_vec(),
            })
        })
        .collect::<Result<_>>()?;
    classes.sort_by(|a, b| a.table.cmp(&b.table));

    let counts = CensusCounts {
        with_identity: classes.len(),
        local: classes.iter().filter(|c| c.local).count(),
        local_zero_symmetric: classes.iter().filter(|c| c.local && c.zero_symmetric).count(),
    };
    classes.retain(|c| match opts.filter {
        CensusFilter::All => true,
        CensusFilter::Local => c.local,
        CensusFilter::LocalZeroSymmetric => c.local && c.zero_symmetric,
    });
    Ok(CensusResult {
        schema: CENSUS_SCHEMA.into(),
        group: desc,
        normalize_identity: opts.normalize_identity,
        prune_nonlocal: prune,
        filter: opts.filter,
        identity_candidates: identities.iter().map(|&i| group.element(i)).collect(),
        endomorphisms: ctx.monoid.len(),
        tables_found,
        counts,
        classes,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusAudit {
    pub group: String,
    pub classes_checked: usize,
    pub audits: Vec<StructuralAudit>,
    pub violations: Vec<String>,
}

impl CensusAudit {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Structural audit of every local class in a census.
pub fn census_audit(result: &CensusResult) -> Result<CensusAudit> {
    let nearrings = result.nearrings()?;
    let audits: Vec<StructuralAudit> = nearrings
        .par_iter()
        .zip(&result.classes)
        .filter(|(_, c)| c.local)
        .map(|(r, _)| structural_audit(r))
        .collect::<Result<_>>()?;
    let violations = audits
        .iter()
        .flat_map(|a| a.violations.iter().map(move |v| format!("identity {}: {v}", a.identity)))
        .collect();
    Ok(CensusAudit {
        group: result.group.to_string(),
        classes_checked: audits.len(),
        audits,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupKind;
    use crate::nearring::is_two_sided_identity;
    use crate::properties::{check_associative, check_left_distributive};

    fn group(kind: GroupKind, p: u32) -> Arc<Group> {
        Arc::new(Group::new(GroupDescriptor::new(kind, p).unwrap()).unwrap())
    }

    /// Every assignment of endomorphisms with the right value at the
    /// identity, filtered by associativity afterwards. No propagation.
    fn unpropagated(g: &Arc<Group>, identity: usize) -> Vec<Vec<u32>> {
        let monoid = endomorphisms(g).unwrap();
        let n = g.order();
        let by_value: Vec<Vec<usize>> = (0..n)
            .map(|x| (0..monoid.len()).filter(|&e| monoid.get(e).apply(identity) == x).collect())
            .collect();
        let mut out = Vec::new();
        if by_value.iter().any(Vec::is_empty) {
            return out;
        }
        let mut choice = vec![0usize; n];
        loop {
            let t: Vec<u32> = (0..n)
                .flat_map(|x| {
                    let e = monoid.get(by_value[x][choice[x]]);
                    (0..n).map(move |y| e.apply(y) as u32)
                })
                .collect();
            let r = Nearring::from_table(g.clone(), t.clone()).unwrap();
            if check_associative(&r).holds && is_two_sided_identity(&r, identity) {
                out.push(t);
            }
            let mut k = 0;
            loop {
                if k == n {
                    out.sort();
                    return out;
                }
                choice[k] += 1;
                if choice[k] < by_value[k].len() {
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
        }
    }

    #[test]
    fn search_matches_unpropagated_enumeration() {
        for kind in [GroupKind::CyclicP3, GroupKind::Dihedral8, GroupKind::Quaternion8] {
            let g = group(kind, 2);
            for identity in 0..g.order() {
                let fast = tables_with_identity(&g, identity, false).unwrap();
                let slow = unpropagated(&g, identity);
                assert_eq!(fast, slow, "{kind:?} identity {identity}");
            }
        }
    }

    #[test]
    fn tables_are_nearrings_with_identity() {
        let g = group(GroupKind::ElemAbelian, 2);
        for t in tables_with_identity(&g, 1, false).unwrap() {
            let r = Nearring::from_table(g.clone(), t).unwrap();
            assert!(check_left_distributive(&r).holds);
            assert!(check_associative(&r).holds);
            assert!(is_two_sided_identity(&r, 1));
        }
    }

    #[test]
    fn normalisation_does_not_change_classes() {
        for kind in [GroupKind::CyclicP3, GroupKind::Dihedral8, GroupKind::ElemAbelian] {
            let d = GroupDescriptor::new(kind, 2).unwrap();
            let norm = census(d, &CensusOptions::default()).unwrap();
            let all = census(
                d,
                &CensusOptions {
                    normalize_identity: false,
                    ..Default::default()
                },
            )
            .unwrap();
            assert_eq!(norm.counts, all.counts, "{kind:?}");
        }
    }

    #[test]
    fn pruning_keeps_local_classes() {
        for kind in [GroupKind::CyclicP3, GroupKind::ElemAbelian, GroupKind::Dihedral8] {
            let d = GroupDescriptor::new(kind, 2).unwrap();
            let base = CensusOptions {
                filter: CensusFilter::Local,
                ..Default::default()
            };
            let plain = census(d, &base).unwrap();
            let pruned = census(
                d,
                &CensusOptions {
                    prune_nonlocal: true,
                    ..base
                },
            )
            .unwrap();
            assert_eq!(plain.classes, pruned.classes, "{kind:?}");
        }
    }

    #[test]
    fn order_eight_counts() {
        let run = |kind| census(GroupDescriptor::new(kind, 2).unwrap(), &CensusOptions::default()).unwrap();
        // Z/8 is the only nearring with identity on C8
        let c8 = run(GroupKind::CyclicP3);
        assert_eq!(c8.counts.local, 1);
        assert_eq!(run(GroupKind::Quaternion8).counts.with_identity, 0);
        assert_eq!(run(GroupKind::Dihedral8).counts.local, 0);
    }

    #[test]
    fn rejects_large_orders() {
        let d = GroupDescriptor::heisenberg(5).unwrap();
        assert!(matches!(census(d, &CensusOptions::default()), Err(Error::SizeCap { .. })));
    }
}
