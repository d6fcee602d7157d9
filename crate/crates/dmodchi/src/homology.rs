//! Koszul and de Rham homology of a straight module, strand by strand.
//!
//! Both complexes have terms indexed by subsets S of the variables at
//! homological spot p = |S|, with differential d(e_S (x) m) =
//! sum over i in S of sign(i, S) e_(S minus i) (x) (op_i m), where op is
//! multiplication by X_i (Koszul) or the derivative (de Rham). In the
//! Z^(n+1) grading the Koszul strand at t uses module pieces M_(t - e_S)
//! and the de Rham strand uses M_(t + e_S).
//!
//! Homology concentrates: a Koszul strand with some t_i != 0 is exact
//! because every direction-i map crosses at coordinate t_i - 1 != -1 and
//! so is an isomorphism; a de Rham strand with some t_i != -1 is exact
//! because every direction-i map is the nonzero scalar t_i + 1. Strands
//! over the whole box {-1,0}^(n+1) are computed anyway and the predicted
//! concentration is asserted by the callers, not assumed.
//!
//! Indexing is homological, p in 0..=n+1, matching the homology form of
//! the Euler characteristic relation; the cohomological translation is
//! H^i = H_(n+1-i).

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cech::insertion_sign;
use crate::exactlin::{self, ExactMatrix};
use crate::monomial::{neg_support, Chamber, ExponentVector, VarSet};
use crate::straight::StraightModule;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HomologyError {
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

/// (-1)^k as an integer.
pub fn parity_sign(k: usize) -> i64 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ComplexClass {
    Koszul,
    DeRham,
}

impl ComplexClass {
    pub fn label(self) -> &'static str {
        match self {
            ComplexClass::Koszul => "koszul",
            ComplexClass::DeRham => "derham",
        }
    }

    /// Z-degree of a homology class at homological spot p in the strand
    /// of total degree t: |t| - p for Koszul, |t| + p for de Rham.
    pub fn zdegree(self, t: &ExponentVector, p: usize) -> i64 {
        match self {
            ComplexClass::Koszul => t.total() - p as i64,
            ComplexClass::DeRham => t.total() + p as i64,
        }
    }
}

/// One strand of the Koszul or de Rham complex of a straight module.
#[derive(Debug, Clone)]
pub struct StrandComplex {
    pub class: ComplexClass,
    pub t: ExponentVector,
    /// Blocks at spot p: subsets S with |S| = p in ascending bitmask
    /// order, each carrying the chamber and dimension of its module piece.
    pub terms: Vec<Vec<(VarSet, Chamber, usize)>>,
    /// `differentials[p-1]`: K_p -> K_(p-1), for p in 1..=n+1.
    pub differentials: Vec<ExactMatrix>,
}

impl StrandComplex {
    pub fn dim_at(&self, p: usize) -> usize {
        self.terms
            .get(p)
            .map_or(0, |blocks| blocks.iter().map(|b| b.2).sum())
    }

    pub fn verify_complex(&self) -> bool {
        for p in 2..self.terms.len() {
            let prod = self.differentials[p - 2]
                .mul(&self.differentials[p - 1])
                .expect("differential shapes chain");
            if !prod.is_zero() {
                return false;
            }
        }
        true
    }

    /// Homology dimensions by spot, from exact ranks.
    pub fn homology_dims(&self) -> Vec<usize> {
        let nv = self.terms.len() - 1;
        let ranks: Vec<usize> = self.differentials.iter().map(exactlin::rank).collect();
        let rank_at = |p: usize| -> usize {
            if p == 0 || p > nv {
                0
            } else {
                ranks[p - 1]
            }
        };
        (0..=nv)
            .map(|p| {
                let kernel = self.dim_at(p) - rank_at(p);
                let boundary = rank_at(p + 1);
                assert!(
                    boundary <= kernel,
                    "boundaries exceed cycles at spot {p}: complex violated"
                );
                kernel - boundary
            })
            .collect()
    }
}

/// The multidegree of the piece feeding the S-block of the strand at t.
fn block_degree(class: ComplexClass, t: &ExponentVector, s: VarSet) -> ExponentVector {
    match class {
        ComplexClass::Koszul => t.minus_set(s),
        ComplexClass::DeRham => t.plus_set(s),
    }
}

fn build_strand(module: &StraightModule, class: ComplexClass, t: &ExponentVector) -> StrandComplex {
    let nv = module.nvars();
    let field = module.field();
    let mut terms: Vec<Vec<(VarSet, Chamber, usize)>> = vec![Vec::new(); nv + 1];
    for s in VarSet::all(nv) {
        let a = block_degree(class, t, s);
        let f = neg_support(&a);
        terms[s.len()].push((s, f, module.dim(f)));
    }
    let offsets = |blocks: &[(VarSet, Chamber, usize)]| -> Vec<usize> {
        let mut off = Vec::with_capacity(blocks.len());
        let mut acc = 0;
        for b in blocks {
            off.push(acc);
            acc += b.2;
        }
        off
    };
    let mut differentials = Vec::with_capacity(nv);
    for p in 1..=nv {
        let src = &terms[p];
        let tgt = &terms[p - 1];
        let src_off = offsets(src);
        let tgt_off = offsets(tgt);
        let mut d = ExactMatrix::zeros(
            tgt.iter().map(|b| b.2).sum(),
            src.iter().map(|b| b.2).sum(),
            field,
        );
        for (si, &(s, _, sdim)) in src.iter().enumerate() {
            if sdim == 0 {
                continue;
            }
            let a = block_degree(class, t, s);
            for i in s.iter() {
                let target = s.remove(i);
                let ti = tgt
                    .binary_search_by_key(&target.0, |b| (b.0).0)
                    .expect("target block exists");
                let op = match class {
                    ComplexClass::Koszul => module.x_action(&a, i),
                    ComplexClass::DeRham => module.d_action(&a, i),
                };
                let sign = insertion_sign(i, s.0);
                for r in 0..op.rows() {
                    for c in 0..op.cols() {
                        let e = op.get(r, c);
                        if e.is_zero() {
                            continue;
                        }
                        let v = if sign == 1 { e.clone() } else { -e };
                        d.set(tgt_off[ti] + r, src_off[si] + c, v);
                    }
                }
            }
        }
        differentials.push(d);
    }
    let strand = StrandComplex {
        class,
        t: t.clone(),
        terms,
        differentials,
    };
    assert!(
        strand.verify_complex(),
        "strand differential does not square to zero"
    );
    strand
}

/// Koszul strand of the module at total multidegree t.
pub fn koszul_strand(module: &StraightModule, t: &ExponentVector) -> StrandComplex {
    build_strand(module, ComplexClass::Koszul, t)
}

/// De Rham strand of the module at total multidegree t.
pub fn derham_strand(module: &StraightModule, t: &ExponentVector) -> StrandComplex {
    build_strand(module, ComplexClass::DeRham, t)
}

/// One nonzero homology entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub class: ComplexClass,
    pub p: usize,
    pub t: Vec<i64>,
    pub dim: usize,
    pub zdegree: i64,
}

/// All Koszul and de Rham homology of a straight module: nonzero entries
/// over the strand box {-1,0}^(n+1) (all other strands are exact by the
/// bijectivity criterion above), plus both Euler characteristics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyTable {
    pub nvars: usize,
    pub entries: Vec<TableEntry>,
    pub chi_koszul: i64,
    pub chi_derham: i64,
}

impl HomologyTable {
    pub fn dim(&self, class: ComplexClass, t: &[i64], p: usize) -> usize {
        self.entries
            .iter()
            .find(|e| e.class == class && e.p == p && e.t == t)
            .map_or(0, |e| e.dim)
    }

    /// Total homology dimension per spot for one complex class.
    pub fn dims_by_p(&self, class: ComplexClass) -> Vec<usize> {
        let mut out = vec![0; self.nvars + 1];
        for e in &self.entries {
            if e.class == class {
                out[e.p] += e.dim;
            }
        }
        out
    }

    pub fn entries_of(&self, class: ComplexClass) -> Vec<&TableEntry> {
        self.entries.iter().filter(|e| e.class == class).collect()
    }

    /// Degree relabeling for a Z-twist M(k): dimensions are unchanged,
    /// every Z-degree shifts by k.
    pub fn with_degree_shift(&self, k: i64) -> HomologyTable {
        let mut out = self.clone();
        for e in &mut out.entries {
            e.zdegree += k;
        }
        out
    }
}

/// Every strand over the box {-1,0}^(n+1) for both classes; nonzero
/// homology recorded with Z-degrees, Euler characteristics as exact
/// alternating sums.
pub fn homology_tables(module: &StraightModule) -> Result<HomologyTable, HomologyError> {
    let nv = module.nvars();
    let mut entries = Vec::new();
    let mut chi = [0i64, 0i64];
    for class in [ComplexClass::Koszul, ComplexClass::DeRham] {
        for neg in VarSet::all(nv) {
            let t = ExponentVector(
                (0..nv)
                    .map(|i| if neg.contains(i) { -1 } else { 0 })
                    .collect(),
            );
            let strand = build_strand(module, class, &t);
            let dims = strand.homology_dims();
            for (p, &dim) in dims.iter().enumerate() {
                if dim == 0 {
                    continue;
                }
                let sign = parity_sign(p);
                chi[(class == ComplexClass::DeRham) as usize] += sign * dim as i64;
                entries.push(TableEntry {
                    class,
                    p,
                    t: t.0.clone(),
                    dim,
                    zdegree: class.zdegree(&t, p),
                });
            }
        }
    }
    entries.sort_by(|a, b| (a.class, &a.t, a.p).cmp(&(b.class, &b.t, b.p)));
    let table = HomologyTable {
        nvars: nv,
        entries,
        chi_koszul: chi[0],
        chi_derham: chi[1],
    };

    // Closed-form cross-check: chi(X, M) is the alternating chamber sum,
    // and chi(dR, M) is (-1)^(n+1) times it. Disagreement with the strand
    // route signals an implementation bug.
    let chamber_sum: i64 = VarSet::all(nv)
        .map(|f| {
            let sign = parity_sign(f.len());
            sign * module.dim(f) as i64
        })
        .sum();
    let top_sign = parity_sign(nv);
    if table.chi_koszul != chamber_sum {
        return Err(HomologyError::InternalInconsistency(format!(
            "chi_koszul strand route {} != chamber closed form {}",
            table.chi_koszul, chamber_sum
        )));
    }
    if table.chi_derham != top_sign * chamber_sum {
        return Err(HomologyError::InternalInconsistency(format!(
            "chi_derham strand route {} != closed form {}",
            table.chi_derham,
            top_sign * chamber_sum
        )));
    }
    Ok(table)
}

/// Both Euler characteristics, strand route cross-checked against the
/// chamber closed forms.
pub fn euler_characteristics(module: &StraightModule) -> Result<(i64, i64), HomologyError> {
    let table = homology_tables(module)?;
    Ok((table.chi_koszul, table.chi_derham))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MainTheoremVerdict {
    pub chi_koszul: i64,
    pub chi_derham: i64,
    pub verdict: Verdict,
}

/// The headline check: chi(dR, M) = (-1)^(n+1) chi(X, M), exactly.
pub fn verify_main_theorem(module: &StraightModule) -> Result<MainTheoremVerdict, HomologyError> {
    let (chi_koszul, chi_derham) = euler_characteristics(module)?;
    let sign = parity_sign(module.nvars());
    let verdict = if chi_derham == sign * chi_koszul {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(MainTheoremVerdict {
        chi_koszul,
        chi_derham,
        verdict,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum LocalizedVerdict {
    /// Multiplication by X_i is not bijective on the module.
    HypothesisNotMet,
    Pass,
    Fail(String),
}

/// The localized-vanishing check: if multiplication by X_i is bijective
/// on M then chi(dR, M) = 0 and every Koszul strand is exact.
pub fn verify_localized_vanishing(
    module: &StraightModule,
    i: usize,
) -> Result<LocalizedVerdict, HomologyError> {
    if !module.is_x_invertible(i) {
        return Ok(LocalizedVerdict::HypothesisNotMet);
    }
    let table = homology_tables(module)?;
    if table.chi_derham != 0 {
        return Ok(LocalizedVerdict::Fail(format!(
            "chi_derham = {} != 0",
            table.chi_derham
        )));
    }
    if let Some(e) = table.entries_of(ComplexClass::Koszul).first() {
        return Ok(LocalizedVerdict::Fail(format!(
            "Koszul homology nonzero: dim {} at p = {}",
            e.dim, e.p
        )));
    }
    Ok(LocalizedVerdict::Pass)
}
