//! Multidegree strands of the Cech complex on the generators of a
//! squarefree monomial ideal.
//!
//! The Cech complex is C^p = sum over |T| = p of R localized at the
//! product of the generators in T. Its multidegree-a piece is a finite
//! complex of spaces of dimension 0 or 1: the monomial X^a lies in the
//! localization at T exactly when its negative variables are all inverted,
//! i.e. neg_support(a) is contained in the union of the generator supports
//! over T. Cohomology of the strand at a is the multigraded piece
//! H^j_I(R)_a, computed with explicit bases so that the multiplication
//! maps X_i between adjacent strands can be extracted as matrices.

use crate::exactlin::{self, ExactMatrix, FieldCfg, HomologyBasis};
use crate::monomial::{neg_support, ExponentVector, SquarefreeIdeal, VarSet};

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CechError {
    #[error(transparent)]
    Linear(#[from] exactlin::ExactLinError),
    #[error("cohomological degree {0} out of range 0..={1}")]
    DegreeOutOfRange(usize, usize),
}

/// Cech-standard sign: (-1)^(number of elements of T below j).
pub fn insertion_sign(j: usize, t: u32) -> i64 {
    let below = (t & ((1u32 << j) - 1)).count_ones();
    if below.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// The multidegree-a strand of the Cech complex: which spots T are
/// present (dimension 1) and the differentials between consecutive
/// cohomological degrees.
#[derive(Debug, Clone)]
pub struct CechStrand {
    pub a: ExponentVector,
    /// Number of generators; spots are subsets T of 0..s.
    pub s: usize,
    /// Present spots grouped by |T| = p, each list in ascending bitmask
    /// order. `spots[p]` indexes the basis of C^p at this multidegree.
    pub spots: Vec<Vec<u32>>,
    /// `differentials[p]`: C^p -> C^(p+1), for p in 0..s.
    pub differentials: Vec<ExactMatrix>,
    field: FieldCfg,
}

impl CechStrand {
    pub fn dim_at(&self, p: usize) -> usize {
        self.spots.get(p).map_or(0, Vec::len)
    }

    /// Incoming and outgoing differentials around cohomological spot j,
    /// with zero maps at the ends.
    fn around(&self, j: usize) -> (ExactMatrix, ExactMatrix) {
        let d_in = if j == 0 {
            ExactMatrix::zeros(self.dim_at(0), 0, self.field)
        } else {
            self.differentials[j - 1].clone()
        };
        let d_out = if j == self.s {
            ExactMatrix::zeros(0, self.dim_at(self.s), self.field)
        } else {
            self.differentials[j].clone()
        };
        (d_in, d_out)
    }

    /// d^(p+1) . d^p = 0 for every p.
    pub fn verify_complex(&self) -> bool {
        for p in 0..self.s.saturating_sub(1) {
            match self.differentials[p + 1].mul(&self.differentials[p]) {
                Ok(prod) => {
                    if !prod.is_zero() {
                        return false;
                    }
                }
                Err(_) => return false,
            }
        }
        true
    }
}

/// Build the strand of the Cech complex of `ideal` at multidegree `a`.
pub fn strand_complex(ideal: &SquarefreeIdeal, a: &ExponentVector, field: FieldCfg) -> CechStrand {
    let f = neg_support(a);
    strand_for_chamber(ideal, f, a.clone(), field)
}

/// Presence only depends on the chamber of `a`; this is the shared builder.
fn strand_for_chamber(
    ideal: &SquarefreeIdeal,
    f: VarSet,
    a: ExponentVector,
    field: FieldCfg,
) -> CechStrand {
    let s = ideal.num_gens();
    let present = |t: u32| f.is_subset_of(ideal.support_union(t));
    let mut spots: Vec<Vec<u32>> = vec![Vec::new(); s + 1];
    for t in 0u32..1u32 << s {
        if present(t) {
            spots[t.count_ones() as usize].push(t);
        }
    }
    // Presence is upward closed, so each differential entry's target spot
    // is present whenever its source is.
    let mut differentials = Vec::with_capacity(s);
    for p in 0..s {
        let src = &spots[p];
        let tgt = &spots[p + 1];
        let mut d = ExactMatrix::zeros(tgt.len(), src.len(), field);
        for (c, &t) in src.iter().enumerate() {
            for j in 0..s {
                if t >> j & 1 == 1 {
                    continue;
                }
                let t_up = t | 1 << j;
                let r = tgt
                    .binary_search(&t_up)
                    .expect("present spot missing upward-closed target");
                d.set(r, c, field.from_int(insertion_sign(j, t)));
            }
        }
        differentials.push(d);
    }
    let strand = CechStrand {
        a,
        s,
        spots,
        differentials,
        field,
    };
    debug_assert!(strand.verify_complex());
    strand
}

/// Cohomology of the strand at `a` in every cohomological degree
/// j in 0..=s, with explicit bases. The dimensions are the multigraded
/// numbers dim H^j_I(R)_a.
pub fn strand_cohomology(
    ideal: &SquarefreeIdeal,
    a: &ExponentVector,
    field: FieldCfg,
) -> Result<Vec<HomologyBasis>, CechError> {
    let strand = strand_complex(ideal, a, field);
    strand_cohomology_of(&strand)
}

pub fn strand_cohomology_of(strand: &CechStrand) -> Result<Vec<HomologyBasis>, CechError> {
    let mut out = Vec::with_capacity(strand.s + 1);
    for j in 0..=strand.s {
        let (d_in, d_out) = strand.around(j);
        out.push(exactlin::homology_basis(&d_in, &d_out)?);
    }
    Ok(out)
}

/// The spot-wise chain map realizing multiplication by X_i between two
/// strands: identity on every spot present in both (the monomial X^a maps
/// to X^(a+e_i) with coefficient 1), zero otherwise. One matrix per
/// cohomological degree.
pub(crate) fn chain_map_between(
    src: &CechStrand,
    tgt: &CechStrand,
    field: FieldCfg,
) -> Vec<ExactMatrix> {
    let s = src.s;
    let mut maps = Vec::with_capacity(s + 1);
    for p in 0..=s {
        let mut m = ExactMatrix::zeros(tgt.dim_at(p), src.dim_at(p), field);
        for (c, t) in src.spots[p].iter().enumerate() {
            // Negative support only shrinks under multiplication by X_i,
            // so a source-present spot is present in the target.
            let r = tgt.spots[p]
                .binary_search(t)
                .expect("source-present spot missing in target strand");
            m.set(r, c, field.one());
        }
        maps.push(m);
    }
    maps
}

/// Matrix of the map H^j(strand at a) -> H^j(strand at a + e_i) induced by
/// multiplication by X_i.
pub fn induced_x_map(
    ideal: &SquarefreeIdeal,
    a: &ExponentVector,
    i: usize,
    j: usize,
    field: FieldCfg,
) -> Result<ExactMatrix, CechError> {
    let s = ideal.num_gens();
    if j > s {
        return Err(CechError::DegreeOutOfRange(j, s));
    }
    let src = strand_complex(ideal, a, field);
    let tgt = strand_complex(ideal, &a.shifted(i, 1), field);
    let maps = chain_map_between(&src, &tgt, field);
    debug_assert!(chain_map_commutes(&src, &tgt, &maps));
    let src_h = strand_cohomology_of(&src)?;
    let tgt_h = strand_cohomology_of(&tgt)?;
    Ok(exactlin::induced_on_homology(
        &maps[j], &src_h[j], &tgt_h[j],
    )?)
}

/// f . d_src = d_tgt . f for a spot-wise chain map.
pub(crate) fn chain_map_commutes(src: &CechStrand, tgt: &CechStrand, maps: &[ExactMatrix]) -> bool {
    for p in 0..src.s {
        let lhs = maps[p + 1].mul(&src.differentials[p]).unwrap();
        let rhs = tgt.differentials[p].mul(&maps[p]).unwrap();
        if lhs != rhs {
            return false;
        }
    }
    true
}
