//! Finite groups as validated Cayley tables.
//!
//! Elements are indices `0..n` with the identity at index 0. Abelian groups
//! built from invariants use mixed-radix indexing, first factor least
//! significant, so `C2xC4` has element `i = a + 2b` for `(a, b) ∈ Z/2 × Z/4`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::arith::{gcd, is_power_of, lcm};
use crate::error::{Error, Result};

/// Largest group order accepted by the constructors.
pub const DEFAULT_GROUP_CAP: u64 = 256;

#[derive(Clone)]
pub struct FiniteGroup {
    n: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
    elem_order: Vec<u32>,
    invariants: Option<Vec<u64>>,
    label: String,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table
    }
}

impl Eq for FiniteGroup {}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.label, self.n)
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

fn check_cap(order: u64) -> Result<()> {
    if order > DEFAULT_GROUP_CAP {
        Err(Error::GroupTooLarge { order, cap: DEFAULT_GROUP_CAP })
    } else {
        Ok(())
    }
}

impl FiniteGroup {
    /// `Z/n_1 × ... × Z/n_k`. Factors equal to 1 are allowed and dropped.
    pub fn abelian(invariants: &[u64]) -> Result<Arc<FiniteGroup>> {
        if invariants.iter().any(|&m| m == 0) {
            return Err(Error::InvalidGroup("invariants must be at least 1".into()));
        }
        let inv: Vec<u64> = invariants.iter().copied().filter(|&m| m > 1).collect();
        let order = inv
            .iter()
            .try_fold(1u64, |acc, &m| acc.checked_mul(m))
            .unwrap_or(u64::MAX);
        check_cap(order)?;
        let n = order as usize;
        let to_digits = |mut i: usize| -> Vec<u64> {
            inv.iter()
                .map(|&m| {
                    let d = (i as u64) % m;
                    i /= m as usize;
                    d
                })
                .collect()
        };
        let from_digits = |d: &[u64]| -> usize {
            d.iter().zip(&inv).rev().fold(0usize, |acc, (&x, &m)| acc * m as usize + x as usize)
        };
        let digits: Vec<Vec<u64>> = (0..n).map(to_digits).collect();
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                let s: Vec<u64> = digits[a]
                    .iter()
                    .zip(&digits[b])
                    .zip(&inv)
                    .map(|((&x, &y), &m)| (x + y) % m)
                    .collect();
                table[a * n + b] = from_digits(&s) as u32;
            }
        }
        let label = if inv.is_empty() {
            "trivial".to_string()
        } else {
            inv.iter().map(|m| format!("C{m}")).collect::<Vec<_>>().join("x")
        };
        let mut g = Self::assemble(n, table, label);
        g.invariants = Some(inv);
        Ok(Arc::new(g))
    }

    pub fn cyclic(n: u64) -> Result<Arc<FiniteGroup>> {
        if n == 0 {
            return Err(Error::InvalidGroup("cyclic group of order 0".into()));
        }
        Self::abelian(&[n])
    }

    pub fn trivial() -> Arc<FiniteGroup> {
        Self::abelian(&[]).expect("trivial group")
    }

    /// Validates a Cayley table of 0-based indices with identity at index 0.
    pub fn from_table(rows: &[Vec<u32>], label: &str) -> Result<Arc<FiniteGroup>> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        check_cap(n as u64)?;
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            for &x in row {
                if x as usize >= n {
                    return Err(Error::InvalidGroup(format!("entry {x} out of range in row {i}")));
                }
            }
            table.extend_from_slice(row);
        }
        let at = |a: usize, b: usize| table[a * n + b] as usize;
        for a in 0..n {
            if at(0, a) != a {
                return Err(Error::GroupAxiom { axiom: "identity", witness: (0, a as u32, at(0, a) as u32) });
            }
            if at(a, 0) != a {
                return Err(Error::GroupAxiom { axiom: "identity", witness: (a as u32, 0, at(a, 0) as u32) });
            }
        }
        for a in 0..n {
            if !(0..n).any(|b| at(a, b) == 0 && at(b, a) == 0) {
                return Err(Error::GroupAxiom { axiom: "inverse", witness: (a as u32, 0, 0) });
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = at(a, b);
                for c in 0..n {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(Error::GroupAxiom {
                            axiom: "associativity",
                            witness: (a as u32, b as u32, c as u32),
                        });
                    }
                }
            }
        }
        Ok(Arc::new(Self::assemble(n, table, label.to_string())))
    }

    /// Reads a whitespace-separated Cayley table file.
    pub fn from_table_file(path: &str) -> Result<Arc<FiniteGroup>> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{path}: {e}")))?;
        let rows: Vec<Vec<u32>> = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| {
                l.split_whitespace()
                    .map(|t| t.parse::<u32>().map_err(|_| Error::Parse(format!("bad table entry {t:?}"))))
                    .collect::<Result<Vec<u32>>>()
            })
            .collect::<Result<_>>()?;
        Self::from_table(&rows, &format!("table:{path}"))
    }

    /// Group of permutations of `0..m` given as images, composed as functions
    /// `(a·b)(x) = a(b(x))`. The first permutation must be the identity.
    fn from_permutations(perms: &[Vec<usize>], label: &str) -> Result<Arc<FiniteGroup>> {
        let index: BTreeMap<&Vec<usize>, u32> =
            perms.iter().enumerate().map(|(i, p)| (p, i as u32)).collect();
        let rows: Vec<Vec<u32>> = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| {
                        let c: Vec<usize> = b.iter().map(|&x| a[x]).collect();
                        index[&c]
                    })
                    .collect()
            })
            .collect();
        Self::from_table(&rows, label)
    }

    /// The symmetric group on `m` letters, permutations in lexicographic order.
    pub fn symmetric(m: usize) -> Result<Arc<FiniteGroup>> {
        if m == 0 {
            return Err(Error::InvalidGroup("S_0".into()));
        }
        let order: u64 = (1..=m as u64).product();
        check_cap(order)?;
        let mut perms = Vec::new();
        let mut p: Vec<usize> = (0..m).collect();
        loop {
            perms.push(p.clone());
            // next lexicographic permutation
            let Some(i) = (0..m.saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else { break };
            let j = (i + 1..m).rev().find(|&j| p[j] > p[i]).unwrap();
            p.swap(i, j);
            p[i + 1..].reverse();
        }
        Self::from_permutations(&perms, &format!("S{m}"))
    }

    /// Dihedral group of order `2m`: element `r^i s^e` has index `i + m e`.
    pub fn dihedral(m: u64) -> Result<Arc<FiniteGroup>> {
        if m < 1 {
            return Err(Error::InvalidGroup("dihedral group needs m >= 1".into()));
        }
        check_cap(2 * m)?;
        let m = m as usize;
        let n = 2 * m;
        let mut rows = vec![vec![0u32; n]; n];
        for a in 0..n {
            for b in 0..n {
                let (i, e) = (a % m, a / m);
                let (j, f) = (b % m, b / m);
                // r^i s^e r^j s^f = r^(i ± j) s^(e+f)
                let k = if e == 0 { (i + j) % m } else { (i + m - j) % m };
                rows[a][b] = (k + m * ((e + f) % 2)) as u32;
            }
        }
        Self::from_table(&rows, &format!("D{n}"))
    }

    /// Quaternion group `{±1, ±i, ±j, ±k}` in that order.
    pub fn quaternion() -> Arc<FiniteGroup> {
        // unit index u in {1,i,j,k} = 0..4, sign bit s; element index u*2 + s
        let unit_mul = |a: usize, b: usize| -> (usize, bool) {
            match (a, b) {
                (0, x) | (x, 0) => (x, false),
                (x, y) if x == y => (0, true),
                (1, 2) => (3, false),
                (2, 1) => (3, true),
                (2, 3) => (1, false),
                (3, 2) => (1, true),
                (3, 1) => (2, false),
                (1, 3) => (2, true),
                _ => unreachable!(),
            }
        };
        let rows: Vec<Vec<u32>> = (0..8)
            .map(|a| {
                (0..8)
                    .map(|b| {
                        let (u, neg) = unit_mul(a / 2, b / 2);
                        let sign = (a % 2) ^ (b % 2) ^ neg as usize;
                        (u * 2 + sign) as u32
                    })
                    .collect()
            })
            .collect();
        Self::from_table(&rows, "Q8").expect("quaternion table")
    }

    /// Parses `trivial`, `C3`, `C2xC2xC4`, `S3`, `Q8`, `D8` (order 8) or `table:<path>`.
    pub fn parse_spec(spec: &str) -> Result<Arc<FiniteGroup>> {
        let s = spec.trim();
        if s == "trivial" || s == "1" {
            return Ok(Self::trivial());
        }
        if let Some(path) = s.strip_prefix("table:") {
            return Self::from_table_file(path);
        }
        if s == "Q8" {
            return Ok(Self::quaternion());
        }
        let num = |t: &str| -> Result<u64> {
            t.parse::<u64>().map_err(|_| Error::Parse(format!("bad group spec {s:?}")))
        };
        if let Some(m) = s.strip_prefix('S') {
            return Self::symmetric(num(m)? as usize);
        }
        if let Some(m) = s.strip_prefix('D') {
            let order = num(m)?;
            if order < 2 || order % 2 != 0 {
                return Err(Error::Parse(format!("dihedral order must be even: {s:?}")));
            }
            return Self::dihedral(order / 2);
        }
        let invariants = s
            .split(['x', '×'])
            .map(|t| {
                t.trim()
                    .strip_prefix('C')
                    .ok_or_else(|| Error::Parse(format!("bad group spec {s:?}")))
                    .and_then(num)
            })
            .collect::<Result<Vec<u64>>>()?;
        Self::abelian(&invariants)
    }

    fn assemble(n: usize, table: Vec<u32>, label: String) -> FiniteGroup {
        let mut inverse = vec![0u32; n];
        for a in 0..n {
            for b in 0..n {
                if table[a * n + b] == 0 {
                    inverse[a] = b as u32;
                    break;
                }
            }
        }
        let elem_order = (0..n)
            .map(|a| {
                let (mut x, mut k) = (a, 1u32);
                while x != 0 {
                    x = table[x * n + a] as usize;
                    k += 1;
                }
                k
            })
            .collect();
        FiniteGroup { n, table, inverse, elem_order, invariants: None, label }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Abelian invariants when the group was built from them.
    pub fn invariants(&self) -> Option<&[u64]> {
        self.invariants.as_deref()
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.n + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }

    pub fn pow(&self, a: u32, k: u64) -> u32 {
        let k = k % self.elem_order[a as usize] as u64;
        (0..k).fold(0u32, |acc, _| self.mul(acc, a))
    }

    /// Row `a` of the Cayley table.
    pub fn row(&self, a: u32) -> &[u32] {
        &self.table[a as usize * self.n..(a as usize + 1) * self.n]
    }

    pub fn element_order(&self, a: u32) -> u64 {
        self.elem_order[a as usize] as u64
    }

    /// `d ↦ n_d`, the number of elements of order `d`.
    pub fn order_counts(&self) -> BTreeMap<u64, u64> {
        let mut out = BTreeMap::new();
        for &o in &self.elem_order {
            *out.entry(o as u64).or_insert(0) += 1;
        }
        out
    }

    pub fn exponent(&self) -> u64 {
        self.elem_order.iter().fold(1u64, |acc, &o| lcm(acc, o as u64))
    }

    pub fn is_p_group(&self, p: u64) -> bool {
        is_power_of(self.n as u64, p)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (a + 1..self.n).all(|b| self.table[a * self.n + b] == self.table[b * self.n + a]))
    }

    pub fn is_trivial(&self) -> bool {
        self.n == 1
    }

    /// `true` iff every element has order dividing `p` (so the group is `(Z/p)^s`).
    pub fn is_elementary_abelian(&self, p: u64) -> bool {
        self.is_abelian() && self.elem_order.iter().all(|&o| o == 1 || o as u64 == p)
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.n as u32
    }
}

/// A subgroup, stored as the sorted list of its element indices.
#[derive(Clone, Debug)]
pub struct Subgroup {
    parent: Arc<FiniteGroup>,
    elements: Vec<u32>,
    normal: bool,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.parent == other.parent && self.elements == other.elements
    }
}

impl Eq for Subgroup {}

impl Subgroup {
    /// Validates an explicit element subset.
    pub fn new(parent: &Arc<FiniteGroup>, elements: &[u32]) -> Result<Subgroup> {
        let set: BTreeSet<u32> = elements.iter().copied().collect();
        if let Some(&x) = set.iter().find(|&&x| x as usize >= parent.order()) {
            return Err(Error::InvalidSubgroup(format!("element {x} not in the group")));
        }
        if !set.contains(&0) {
            return Err(Error::InvalidSubgroup("missing the identity".into()));
        }
        for &a in &set {
            if !set.contains(&parent.inv(a)) {
                return Err(Error::InvalidSubgroup(format!("not closed under inverse at {a}")));
            }
            for &b in &set {
                if !set.contains(&parent.mul(a, b)) {
                    return Err(Error::InvalidSubgroup(format!("not closed: {a}·{b}")));
                }
            }
        }
        Ok(Self::from_closed(parent, set.into_iter().collect()))
    }

    fn from_closed(parent: &Arc<FiniteGroup>, elements: Vec<u32>) -> Subgroup {
        let set: BTreeSet<u32> = elements.iter().copied().collect();
        let normal = parent
            .elements()
            .all(|g| elements.iter().all(|&h| set.contains(&parent.mul(parent.mul(g, h), parent.inv(g)))));
        Subgroup { parent: Arc::clone(parent), elements, normal }
    }

    /// The subgroup generated by `gens`.
    pub fn generated(parent: &Arc<FiniteGroup>, gens: &[u32]) -> Result<Subgroup> {
        if let Some(&x) = gens.iter().find(|&&x| x as usize >= parent.order()) {
            return Err(Error::InvalidSubgroup(format!("generator {x} not in the group")));
        }
        let mut set: BTreeSet<u32> = BTreeSet::from([0]);
        let mut frontier = vec![0u32];
        while let Some(a) = frontier.pop() {
            for &g in gens {
                let b = parent.mul(a, g);
                if set.insert(b) {
                    frontier.push(b);
                }
            }
        }
        Ok(Self::from_closed(parent, set.into_iter().collect()))
    }

    pub fn whole(parent: &Arc<FiniteGroup>) -> Subgroup {
        Subgroup { parent: Arc::clone(parent), elements: parent.elements().collect(), normal: true }
    }

    pub fn trivial(parent: &Arc<FiniteGroup>) -> Subgroup {
        Subgroup { parent: Arc::clone(parent), elements: vec![0], normal: true }
    }

    /// The normal Sylow `p`-subgroup, if the group has one. It exists iff the
    /// `p`-elements form a subgroup of full `p`-part order.
    pub fn normal_sylow(parent: &Arc<FiniteGroup>, p: u64) -> Option<Subgroup> {
        let n = parent.order() as u64;
        let mut p_part = 1u64;
        while n % (p_part * p) == 0 {
            p_part *= p;
        }
        let elems: Vec<u32> = parent.elements().filter(|&g| is_power_of(parent.element_order(g), p)).collect();
        if elems.len() as u64 != p_part {
            return None;
        }
        let sub = Subgroup::new(parent, &elems).ok()?;
        sub.normal.then_some(sub)
    }

    /// Every subgroup, smallest first, found by closing joins of cyclic subgroups.
    pub fn all_subgroups(parent: &Arc<FiniteGroup>) -> Vec<Subgroup> {
        let mut found: BTreeSet<Vec<u32>> = BTreeSet::new();
        let cyclic: Vec<Vec<u32>> = parent
            .elements()
            .map(|g| Self::generated(parent, &[g]).unwrap().elements)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let mut frontier: Vec<Vec<u32>> = cyclic.clone();
        found.extend(cyclic.iter().cloned());
        while let Some(h) = frontier.pop() {
            for c in &cyclic {
                let gens: Vec<u32> = h.iter().chain(c).copied().collect();
                let j = Self::generated(parent, &gens).unwrap().elements;
                if found.insert(j.clone()) {
                    frontier.push(j);
                }
            }
        }
        let mut out: Vec<Subgroup> = found.into_iter().map(|e| Self::from_closed(parent, e)).collect();
        out.sort_by(|a, b| a.elements.len().cmp(&b.elements.len()).then(a.elements.cmp(&b.elements)));
        out
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_normal(&self) -> bool {
        self.normal
    }

    pub fn contains(&self, g: u32) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.parent == other.parent && self.elements.iter().all(|&g| other.contains(g))
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.elements.len()
    }

    /// Image of this subgroup under a quotient projection.
    pub fn image(&self, q: &Quotient) -> Result<Subgroup> {
        if self.parent != q.subgroup.parent {
            return Err(Error::GroupMismatch);
        }
        let elems: BTreeSet<u32> = self.elements.iter().map(|&g| q.projection[g as usize]).collect();
        Subgroup::new(&q.group, &elems.into_iter().collect::<Vec<_>>())
    }
}

/// A quotient group with its projection map.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: Arc<FiniteGroup>,
    /// `projection[g]` is the coset index of `g`; cosets are numbered by
    /// first appearance, so the identity coset is 0.
    pub projection: Vec<u32>,
    pub subgroup: Subgroup,
}

impl Quotient {
    /// Elements of `G` lying over the coset `c`.
    pub fn fiber(&self, c: u32) -> Vec<u32> {
        (0..self.projection.len() as u32).filter(|&g| self.projection[g as usize] == c).collect()
    }
}

/// `G/H` for a normal subgroup `H`.
pub fn quotient(g: &Arc<FiniteGroup>, h: &Subgroup) -> Result<Quotient> {
    if **h.parent() != **g {
        return Err(Error::InvalidSubgroup("not a subgroup of this group".into()));
    }
    if !h.is_normal() {
        return Err(Error::NotNormal);
    }
    let n = g.order();
    let mut projection = vec![u32::MAX; n];
    let mut reps = Vec::new();
    for a in 0..n as u32 {
        if projection[a as usize] != u32::MAX {
            continue;
        }
        let c = reps.len() as u32;
        reps.push(a);
        for &x in h.elements() {
            projection[g.mul(a, x) as usize] = c;
        }
    }
    let rows: Vec<Vec<u32>> = reps
        .iter()
        .map(|&a| reps.iter().map(|&b| projection[g.mul(a, b) as usize]).collect())
        .collect();
    let label = if h.order() == 1 {
        g.label().to_string()
    } else if h.order() == n {
        "trivial".to_string()
    } else {
        format!("{}/H{}", g.label(), h.order())
    };
    let mut group = FiniteGroup::assemble(reps.len(), rows.concat(), label);
    if h.order() == n {
        group.invariants = Some(Vec::new());
    } else if h.order() == 1 {
        group.invariants = g.invariants.clone();
    }
    Ok(Quotient { group: Arc::new(group), projection, subgroup: h.clone() })
}

/// `true` iff `gcd(|G|, p) = 1`.
pub fn coprime_to(g: &FiniteGroup, p: u64) -> bool {
    gcd(g.order() as u64, p) == 1
}
