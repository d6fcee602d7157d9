//! Variables, multidegrees, chambers, and squarefree monomial ideals.
//!
//! The ring is K[X_0, ..., X_n] with the Z^(n+1) multigrading. A chamber is
//! the negative-support pattern of a multidegree; for the modules computed
//! here every multigraded piece depends only on its chamber.

use std::fmt;

use thiserror::Error;

/// A subset of the variable indices {0..n}, as a bitmask. Doubles as a
/// chamber (negative-support pattern) and as the support of a squarefree
/// monomial. Bit i set means variable i is in the set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarSet(pub u32);

/// Chambers are negative-support patterns; same carrier as `VarSet`.
pub type Chamber = VarSet;

impl VarSet {
    pub const EMPTY: VarSet = VarSet(0);

    pub fn full(nvars: usize) -> VarSet {
        VarSet(((1u64 << nvars) - 1) as u32)
    }

    pub fn singleton(i: usize) -> VarSet {
        VarSet(1 << i)
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn insert(self, i: usize) -> VarSet {
        VarSet(self.0 | 1 << i)
    }

    pub fn remove(self, i: usize) -> VarSet {
        VarSet(self.0 & !(1 << i))
    }

    pub fn union(self, other: VarSet) -> VarSet {
        VarSet(self.0 | other.0)
    }

    pub fn intersect(self, other: VarSet) -> VarSet {
        VarSet(self.0 & other.0)
    }

    pub fn is_subset_of(self, other: VarSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.contains(i))
    }

    /// All subsets of {0..nvars-1} in binary-counter order.
    pub fn all(nvars: usize) -> impl Iterator<Item = VarSet> {
        (0u32..1 << nvars).map(VarSet)
    }
}

impl fmt::Display for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// A multidegree a in Z^(n+1).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExponentVector(pub Vec<i64>);

impl ExponentVector {
    pub fn zero(nvars: usize) -> Self {
        ExponentVector(vec![0; nvars])
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    /// The Z-degree |a| = sum of the entries.
    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn shifted(&self, i: usize, delta: i64) -> ExponentVector {
        let mut v = self.0.clone();
        v[i] += delta;
        ExponentVector(v)
    }

    /// a - sum of e_i over i in s.
    pub fn minus_set(&self, s: VarSet) -> ExponentVector {
        let mut v = self.0.clone();
        for i in s.iter() {
            v[i] -= 1;
        }
        ExponentVector(v)
    }

    /// a + sum of e_i over i in s.
    pub fn plus_set(&self, s: VarSet) -> ExponentVector {
        let mut v = self.0.clone();
        for i in s.iter() {
            v[i] += 1;
        }
        ExponentVector(v)
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, e) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// The chamber of a multidegree: {i : a_i <= -1}.
pub fn neg_support(a: &ExponentVector) -> Chamber {
    let mut f = VarSet::EMPTY;
    for (i, &e) in a.0.iter().enumerate() {
        if e <= -1 {
            f = f.insert(i);
        }
    }
    f
}

/// Canonical probe degree of a chamber: -1 on F, 0 elsewhere, so that
/// neg_support(chamber_rep(F)) = F.
pub fn chamber_rep(f: Chamber, nvars: usize) -> ExponentVector {
    ExponentVector(
        (0..nvars)
            .map(|i| if f.contains(i) { -1 } else { 0 })
            .collect(),
    )
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IdealError {
    #[error("unit ideal: a generator is a nonzero constant")]
    UnitIdeal,
    #[error("generator is not squarefree and strict mode is set: {0}")]
    StrictNonSquarefree(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("too many generators after normalization: {0} (cap {1})")]
    TooManyGenerators(usize, usize),
}

/// Generator count cap; strands enumerate subsets of the generators.
pub const MAX_GENERATORS: usize = 20;

/// A squarefree monomial ideal, stored as its minimal generating
/// antichain of variable supports, sorted by bitmask.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SquarefreeIdeal {
    nvars: usize,
    gens: Vec<VarSet>,
    was_radicalized: bool,
    removed_redundant: bool,
}

impl SquarefreeIdeal {
    /// Normalize raw generators (exponent maps) into the minimal
    /// squarefree antichain. Non-squarefree inputs are radicalized (noted
    /// in the result) unless `strict` is set. Zero generators is legal and
    /// denotes the zero ideal.
    pub fn normalize(
        nvars: usize,
        raw_gens: &[Vec<(usize, u32)>],
        strict: bool,
    ) -> Result<SquarefreeIdeal, IdealError> {
        let mut supports = Vec::new();
        let mut was_radicalized = false;
        for gen in raw_gens {
            let mut support = VarSet::EMPTY;
            let mut seen = VarSet::EMPTY;
            for &(var, exp) in gen {
                assert!(var < nvars, "variable index out of range");
                if exp == 0 {
                    continue;
                }
                if exp > 1 || seen.contains(var) {
                    if strict {
                        return Err(IdealError::StrictNonSquarefree(format!(
                            "x{var} appears with total exponent > 1"
                        )));
                    }
                    was_radicalized = true;
                }
                seen = seen.insert(var);
                support = support.insert(var);
            }
            if support.is_empty() {
                return Err(IdealError::UnitIdeal);
            }
            supports.push(support);
        }
        supports.sort();
        supports.dedup();
        // Keep only the minimal supports (local cohomology depends only on
        // the radical, and containments are redundant).
        let minimal: Vec<VarSet> = supports
            .iter()
            .filter(|&&s| !supports.iter().any(|&t| t != s && t.is_subset_of(s)))
            .copied()
            .collect();
        let removed_redundant = minimal.len() != supports.len();
        if minimal.len() > MAX_GENERATORS {
            return Err(IdealError::TooManyGenerators(minimal.len(), MAX_GENERATORS));
        }
        Ok(SquarefreeIdeal {
            nvars,
            gens: minimal,
            was_radicalized,
            removed_redundant,
        })
    }

    /// Build directly from supports (already squarefree); still normalized.
    pub fn from_supports(nvars: usize, supports: &[VarSet]) -> Result<SquarefreeIdeal, IdealError> {
        let raw: Vec<Vec<(usize, u32)>> = supports
            .iter()
            .map(|s| s.iter().map(|i| (i, 1)).collect())
            .collect();
        SquarefreeIdeal::normalize(nvars, &raw, false)
    }

    pub fn zero(nvars: usize) -> SquarefreeIdeal {
        SquarefreeIdeal {
            nvars,
            gens: Vec::new(),
            was_radicalized: false,
            removed_redundant: false,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn gens(&self) -> &[VarSet] {
        &self.gens
    }

    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn was_radicalized(&self) -> bool {
        self.was_radicalized
    }

    /// Union of the generator supports over a set T of generator indices
    /// (bitmask over 0..num_gens).
    pub fn support_union(&self, t: u32) -> VarSet {
        let mut u = VarSet::EMPTY;
        for (k, &g) in self.gens.iter().enumerate() {
            if t >> k & 1 == 1 {
                u = u.union(g);
            }
        }
        u
    }

    /// Canonical text rendering, e.g. "x0*x1, x2". The zero ideal is "0".
    pub fn render(&self) -> String {
        if self.gens.is_empty() {
            return "0".to_string();
        }
        self.gens
            .iter()
            .map(|g| {
                g.iter()
                    .map(|i| format!("x{i}"))
                    .collect::<Vec<_>>()
                    .join("*")
            })
            .collect::<Vec<_>>()
            .join(", ")
    }
}

/// Parse the monomial text syntax: comma-separated generators, each a
/// product of variables `x0*x1` or exponent form `x0^2*x1`. Case is
/// ignored, whitespace is ignored, and the empty string is the zero ideal.
pub fn parse_ideal(nvars: usize, text: &str, strict: bool) -> Result<SquarefreeIdeal, IdealError> {
    let compact: String = text
        .chars()
        .filter(|c| !c.is_whitespace())
        .collect::<String>()
        .to_ascii_lowercase();
    if compact.is_empty() || compact == "0" {
        return Ok(SquarefreeIdeal::zero(nvars));
    }
    let mut raw_gens = Vec::new();
    for gen_text in compact.split(',') {
        if gen_text.is_empty() {
            return Err(IdealError::Parse("empty generator".to_string()));
        }
        let mut gen = Vec::new();
        for factor in gen_text.split('*') {
            let (var_text, exp) = match factor.split_once('^') {
                Some((v, e)) => {
                    let exp: u32 = e
                        .parse()
                        .map_err(|_| IdealError::Parse(format!("bad exponent in '{factor}'")))?;
                    (v, exp)
                }
                None => (factor, 1),
            };
            let Some(idx_text) = var_text.strip_prefix('x') else {
                return Err(IdealError::Parse(format!(
                    "expected variable, got '{factor}'"
                )));
            };
            let var: usize = idx_text
                .parse()
                .map_err(|_| IdealError::Parse(format!("bad variable index in '{factor}'")))?;
            if var >= nvars {
                return Err(IdealError::Parse(format!(
                    "variable x{var} out of range for {nvars} variables"
                )));
            }
            gen.push((var, exp));
        }
        raw_gens.push(gen);
    }
    SquarefreeIdeal::normalize(nvars, &raw_gens, strict)
}
