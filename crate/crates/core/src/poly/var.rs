use std::fmt;

/// Index of a variable in a computation's variable universe.
///
/// The first eight indices are fixed (see the associated constants); user
/// parameters are appended after them in first-appearance order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId(pub u16);

impl VarId {
    pub const Y1: VarId = VarId(0);
    pub const Y2: VarId = VarId(1);
    pub const Y3: VarId = VarId(2);
    pub const D: VarId = VarId(3);
    pub const K: VarId = VarId(4);
    pub const X1: VarId = VarId(5);
    pub const X2: VarId = VarId(6);
    pub const T: VarId = VarId(7);

    /// Number of fixed variables preceding the user parameters.
    pub const FIXED: usize = 8;

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

const FIXED_NAMES: [&str; VarId::FIXED] = ["y1", "y2", "y3", "d", "k", "x1", "x2", "t"];

/// Names that user parameters may never take. `u` is not part of the
/// universe (it only exists inside the offset elimination) but is still
/// reserved.
pub const RESERVED_NAMES: [&str; 9] = ["y1", "y2", "y3", "d", "k", "x1", "x2", "t", "u"];

pub fn is_reserved(name: &str) -> bool {
    RESERVED_NAMES.contains(&name)
}

/// The ordered variable universe shared by every polynomial of one computation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Universe {
    params: Vec<String>,
}

impl Universe {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        VarId::FIXED + self.params.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn params(&self) -> impl Iterator<Item = (VarId, &str)> {
        self.params
            .iter()
            .enumerate()
            .map(|(i, s)| (VarId((VarId::FIXED + i) as u16), s.as_str()))
    }

    pub fn lookup(&self, name: &str) -> Option<VarId> {
        if let Some(i) = FIXED_NAMES.iter().position(|n| *n == name) {
            return Some(VarId(i as u16));
        }
        self.params
            .iter()
            .position(|n| n == name)
            .map(|i| VarId((VarId::FIXED + i) as u16))
    }

    /// Returns the id of a parameter, appending it if it is new.
    ///
    /// Panics if `name` is reserved; callers screen names first.
    pub fn intern_param(&mut self, name: &str) -> VarId {
        assert!(!is_reserved(name), "`{name}` is a reserved variable name");
        if let Some(v) = self.lookup(name) {
            return v;
        }
        self.params.push(name.to_string());
        VarId((VarId::FIXED + self.params.len() - 1) as u16)
    }

    pub fn name(&self, v: VarId) -> String {
        let i = v.index();
        if i < VarId::FIXED {
            FIXED_NAMES[i].to_string()
        } else {
            self.params
                .get(i - VarId::FIXED)
                .cloned()
                .unwrap_or_else(|| format!("v{i}"))
        }
    }
}

/// A set of variables, stored as a bit mask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct VarSet(u64);

impl VarSet {
    pub const EMPTY: VarSet = VarSet(0);

    pub fn of(vars: &[VarId]) -> Self {
        let mut s = VarSet(0);
        for &v in vars {
            s.insert(v);
        }
        s
    }

    #[inline]
    pub fn insert(&mut self, v: VarId) {
        assert!(v.index() < 64, "variable universe limited to 64 variables");
        self.0 |= 1 << v.index();
    }

    pub fn remove(&mut self, v: VarId) {
        self.0 &= !(1u64 << v.index());
    }

    #[inline]
    pub fn contains(self, v: VarId) -> bool {
        v.index() < 64 && self.0 & (1 << v.index()) != 0
    }

    #[inline]
    pub fn contains_index(self, i: usize) -> bool {
        i < 64 && self.0 & (1 << i) != 0
    }

    pub fn union(self, other: VarSet) -> VarSet {
        VarSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VarSet) -> VarSet {
        VarSet(self.0 & other.0)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Lowest-index member.
    pub fn first(self) -> Option<VarId> {
        if self.0 == 0 {
            None
        } else {
            Some(VarId(self.0.trailing_zeros() as u16))
        }
    }

    pub fn iter(self) -> impl Iterator<Item = VarId> {
        (0..64u16).filter(move |i| self.0 & (1 << i) != 0).map(VarId)
    }
}

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|v| v.0)).finish()
    }
}
