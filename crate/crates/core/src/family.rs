//! Ground sets, member sets and families, plus the t-intersection predicates
//! and the core/remainder decomposition every search is built on.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::Value;

use crate::error::{Error, Result};

/// Widest supported ground set; member sets are `u128` bit-vectors.
pub const MAX_GROUND: usize = 128;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct GroundSet {
    size: usize,
}

impl GroundSet {
    pub fn new(size: usize) -> Result<Self> {
        if size > MAX_GROUND {
            return Err(Error::GroundTooLarge(size));
        }
        Ok(GroundSet { size })
    }

    pub fn size(&self) -> usize {
        self.size
    }
}

/// A subset of the ground set `0..n`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MemberSet {
    bits: u128,
    card: u32,
}

impl MemberSet {
    pub const EMPTY: MemberSet = MemberSet { bits: 0, card: 0 };

    pub fn from_bits(bits: u128) -> Self {
        MemberSet {
            bits,
            card: bits.count_ones(),
        }
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Result<Self> {
        let mut bits = 0u128;
        for e in elements {
            if e >= MAX_GROUND {
                return Err(Error::ElementOutOfRange {
                    element: e,
                    ground: MAX_GROUND,
                });
            }
            bits |= 1 << e;
        }
        Ok(MemberSet::from_bits(bits))
    }

    pub fn bits(&self) -> u128 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.card as usize
    }

    pub fn is_empty(&self) -> bool {
        self.card == 0
    }

    pub fn contains(&self, e: usize) -> bool {
        e < MAX_GROUND && self.bits >> e & 1 == 1
    }

    pub fn intersection_len(&self, other: &MemberSet) -> usize {
        (self.bits & other.bits).count_ones() as usize
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> {
        let mut w = self.bits;
        std::iter::from_fn(move || {
            if w == 0 {
                None
            } else {
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(b)
            }
        })
    }

    /// Number of bits needed to hold this set (one past the largest element).
    pub fn width(&self) -> usize {
        128 - self.bits.leading_zeros() as usize
    }
}

impl fmt::Debug for MemberSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.elements()).finish()
    }
}

/// `|a ∩ b| >= t`. With `a == b` this is `|a| >= t`.
pub fn t_intersects(a: &MemberSet, b: &MemberSet, t: usize) -> bool {
    a.intersection_len(b) >= t
}

/// Provenance attached by generators and preserved through file round trips.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct FamilyMeta {
    pub generator: Option<String>,
    pub params: BTreeMap<String, Value>,
    /// Human-readable names of ground elements for flattened universes.
    pub labels: Option<Vec<String>>,
    /// Member-index groups, e.g. the parallel classes of a line family.
    pub groups: Option<Vec<Vec<usize>>>,
}

impl FamilyMeta {
    pub fn is_empty(&self) -> bool {
        self.generator.is_none()
            && self.params.is_empty()
            && self.labels.is_none()
            && self.groups.is_none()
    }
}

/// A family of distinct subsets of a ground set, kept in ascending order of
/// bit encoding. Equality ignores metadata.
#[derive(Clone, Debug)]
pub struct SetFamily {
    ground: GroundSet,
    members: Vec<MemberSet>,
    meta: FamilyMeta,
}

impl PartialEq for SetFamily {
    fn eq(&self, other: &Self) -> bool {
        self.ground == other.ground && self.members == other.members
    }
}

impl Eq for SetFamily {}

impl SetFamily {
    pub fn empty(ground: usize) -> Result<Self> {
        Ok(SetFamily {
            ground: GroundSet::new(ground)?,
            members: Vec::new(),
            meta: FamilyMeta::default(),
        })
    }

    /// Builds a family, canonicalizing order. Duplicates are an error.
    pub fn new(ground: usize, members: Vec<MemberSet>) -> Result<Self> {
        let ground = GroundSet::new(ground)?;
        let mut members = members;
        for m in &members {
            if m.width() > ground.size() {
                let element = m.width() - 1;
                return Err(Error::ElementOutOfRange {
                    element,
                    ground: ground.size(),
                });
            }
        }
        members.sort_unstable();
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateSet(w[0].elements().collect()));
        }
        Ok(SetFamily {
            ground,
            members,
            meta: FamilyMeta::default(),
        })
    }

    /// Like [`SetFamily::new`] but merges duplicates instead of rejecting them.
    pub fn new_dedup(ground: usize, mut members: Vec<MemberSet>) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        SetFamily::new(ground, members)
    }

    pub fn from_lists(ground: usize, sets: &[&[usize]]) -> Result<Self> {
        let members = sets
            .iter()
            .map(|s| {
                if let Some(&e) = s.iter().find(|&&e| e >= ground) {
                    return Err(Error::ElementOutOfRange { element: e, ground });
                }
                MemberSet::from_elements(s.iter().copied())
            })
            .collect::<Result<Vec<_>>>()?;
        SetFamily::new(ground, members)
    }

    pub fn with_meta(mut self, meta: FamilyMeta) -> Self {
        self.meta = meta;
        self
    }

    pub fn meta(&self) -> &FamilyMeta {
        &self.meta
    }

    pub fn meta_mut(&mut self) -> &mut FamilyMeta {
        &mut self.meta
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn ground_size(&self) -> usize {
        self.ground.size()
    }

    pub fn members(&self) -> &[MemberSet] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn get(&self, i: usize) -> MemberSet {
        self.members[i]
    }

    pub fn index_of(&self, m: &MemberSet) -> Option<usize> {
        self.members.binary_search(m).ok()
    }

    pub fn contains(&self, m: &MemberSet) -> bool {
        self.index_of(m).is_some()
    }

    pub fn is_subfamily_of(&self, other: &SetFamily) -> bool {
        self.members.iter().all(|m| other.contains(m))
    }

    /// Indices (into `self`) of the members of `sub`.
    pub fn indices_of(&self, sub: &SetFamily) -> Result<Vec<usize>> {
        sub.members
            .iter()
            .map(|m| self.index_of(m).ok_or(Error::NotSubfamily))
            .collect()
    }

    /// Subfamily made of the members at `indices`. Keeps element labels.
    pub fn subfamily<I: IntoIterator<Item = usize>>(&self, indices: I) -> SetFamily {
        let mut members: Vec<MemberSet> = indices.into_iter().map(|i| self.members[i]).collect();
        members.sort_unstable();
        members.dedup();
        SetFamily {
            ground: self.ground,
            members,
            meta: FamilyMeta {
                labels: self.meta.labels.clone(),
                ..FamilyMeta::default()
            },
        }
    }

    /// Subfamily selected by a bitmask over member indices (`|F| <= 64`).
    pub fn subfamily_mask(&self, mask: u64) -> SetFamily {
        self.subfamily(mask_indices(mask))
    }

    /// Members as sorted element lists, for display and serialization.
    pub fn to_lists(&self) -> Vec<Vec<usize>> {
        self.members.iter().map(|m| m.elements().collect()).collect()
    }
}

pub(crate) fn mask_indices(mask: u64) -> impl Iterator<Item = usize> {
    let mut w = mask;
    std::iter::from_fn(move || {
        if w == 0 {
            None
        } else {
            let b = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(b)
        }
    })
}

/// α(F): size of a largest member.
pub fn alpha(f: &SetFamily) -> Result<usize> {
    f.members
        .iter()
        .map(MemberSet::len)
        .max()
        .ok_or(Error::EmptyFamily("alpha"))
}

/// Split of a family into the members that t-intersect every other member
/// (`plus`) and the rest (`minus`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub plus: SetFamily,
    pub minus: SetFamily,
    pub t: usize,
}

pub fn decompose(f: &SetFamily, t: usize) -> Decomposition {
    let n = f.len();
    let mut in_minus = vec![false; n];
    for i in 0..n {
        for j in i + 1..n {
            if !t_intersects(&f.members[i], &f.members[j], t) {
                in_minus[i] = true;
                in_minus[j] = true;
            }
        }
    }
    let plus = f.subfamily((0..n).filter(|&i| !in_minus[i]));
    let minus = f.subfamily((0..n).filter(|&i| in_minus[i]));
    Decomposition { plus, minus, t }
}

/// Every two distinct members t-intersect. Families of size <= 1 qualify.
pub fn is_t_intersecting(f: &SetFamily, t: usize) -> bool {
    let m = &f.members;
    (0..m.len()).all(|i| (i + 1..m.len()).all(|j| t_intersects(&m[i], &m[j], t)))
}

/// Any member of one family t-intersects any member of a different family.
/// A set shared by two families must therefore have at least `t` elements.
pub fn is_cross_t_intersecting(tuple: &[SetFamily], t: usize) -> bool {
    for (i, a) in tuple.iter().enumerate() {
        for b in &tuple[i + 1..] {
            for x in a.members() {
                for y in b.members() {
                    if !t_intersects(x, y, t) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Union of the members of all families, canonical order, duplicates merged.
pub fn union_family(tuple: &[SetFamily]) -> Result<SetFamily> {
    let ground = tuple.first().map_or(0, SetFamily::ground_size);
    if let Some(bad) = tuple.iter().find(|f| f.ground_size() != ground) {
        return Err(Error::GroundMismatch(ground, bad.ground_size()));
    }
    let members = tuple.iter().flat_map(|f| f.members().iter().copied()).collect();
    let mut out = SetFamily::new_dedup(ground, members)?;
    if let Some(labels) = tuple.first().and_then(|f| f.meta.labels.clone()) {
        out.meta.labels = Some(labels);
    }
    Ok(out)
}
