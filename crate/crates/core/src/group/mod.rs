//! Finite groups stored as dense Cayley tables.
//!
//! Every constructor in this module places the identity at index 0. Products of
//! groups use a mixed-radix layout with the first factor most significant, and a
//! semidirect product `N ⋊ H` stores `(n, h)` at index `h·|N| + n`, so the normal
//! factor always occupies indices `0..|N|`.

mod expr;
mod extension;

pub use expr::{build_group, build_group_with_cap, GroupExpr, DEFAULT_ORDER_CAP};
pub use extension::{
    choose_section, cocycle_tau, quotient, Cocycle, ExtensionSpec, GroupExtension, KernelSelector,
    Quotient,
};

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// Orders up to which [`find_isomorphism`] runs its exhaustive search.
pub const ISOMORPHISM_CAP: usize = 16;

/// A square multiplication table over `0..order`, not yet known to be a group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CayleyTable {
    order: usize,
    entries: Vec<usize>,
    labels: Vec<String>,
}

impl CayleyTable {
    pub fn new(rows: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::InvalidTable("empty table".into()));
        }
        let mut entries = Vec::with_capacity(order * order);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != order {
                return Err(Error::InvalidTable(format!(
                    "row {i} has {} entries, expected {order}",
                    row.len()
                )));
            }
            entries.extend(row);
        }
        Self::from_flat(order, entries, labels)
    }

    pub fn from_flat(
        order: usize,
        entries: Vec<usize>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        if order == 0 || entries.len() != order * order {
            return Err(Error::InvalidTable(format!(
                "expected {} entries for order {order}, got {}",
                order * order,
                entries.len()
            )));
        }
        if let Some(pos) = entries.iter().position(|&e| e >= order) {
            return Err(Error::InvalidTable(format!(
                "entry ({}, {}) = {} is out of range",
                pos / order,
                pos % order,
                entries[pos]
            )));
        }
        let labels = match labels {
            Some(l) if l.len() == order => l,
            Some(l) => {
                return Err(Error::InvalidTable(format!(
                    "{} labels for {order} elements",
                    l.len()
                )))
            }
            None => (0..order).map(|i| i.to_string()).collect(),
        };
        Ok(Self {
            order,
            entries,
            labels,
        })
    }

    /// Reads a whitespace-separated table, one row per line. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let row = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<usize>().map_err(|_| {
                        Error::InvalidTable(format!("line {}: `{tok}` is not an index", lineno + 1))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        Self::new(rows, None)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn product(&self, a: usize, b: usize) -> usize {
        self.entries[a * self.order + b]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Overwrites one entry. Used to build corrupted fixtures.
    pub fn set_product(&mut self, a: usize, b: usize, value: usize) {
        assert!(value < self.order);
        self.entries[a * self.order + b] = value;
    }

    fn find_identity(&self) -> Option<usize> {
        (0..self.order)
            .find(|&e| (0..self.order).all(|g| self.product(e, g) == g && self.product(g, e) == g))
    }

    /// Lists every violated group axiom. Empty iff the table is a group.
    pub fn axiom_violations(&self) -> Vec<AxiomViolation> {
        let n = self.order;
        let mut out = Vec::new();
        let mut first = None;
        let mut count = 0usize;
        for a in 0..n {
            for b in 0..n {
                let ab = self.product(a, b);
                for c in 0..n {
                    if self.product(ab, c) != self.product(a, self.product(b, c)) {
                        count += 1;
                        first.get_or_insert((a, b, c));
                    }
                }
            }
        }
        if let Some(witness) = first {
            out.push(AxiomViolation::Associativity { witness, count });
        }
        match self.find_identity() {
            None => out.push(AxiomViolation::NoIdentity),
            Some(e) => {
                for g in 0..n {
                    if !(0..n).any(|h| self.product(g, h) == e && self.product(h, g) == e) {
                        out.push(AxiomViolation::NoInverse { element: g });
                    }
                }
            }
        }
        out
    }
}

/// A witness that a [`CayleyTable`] is not a group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomViolation {
    /// `(a·b)·c ≠ a·(b·c)`; `witness` is the lexicographically first failing triple.
    Associativity {
        witness: (usize, usize, usize),
        count: usize,
    },
    NoIdentity,
    NoInverse {
        element: usize,
    },
}

impl AxiomViolation {
    pub fn name(&self) -> &'static str {
        match self {
            AxiomViolation::Associativity { .. } => "associativity",
            AxiomViolation::NoIdentity => "identity",
            AxiomViolation::NoInverse { .. } => "inverse",
        }
    }
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomViolation::Associativity {
                witness: (a, b, c),
                count,
            } => {
                write!(
                    f,
                    "associativity fails at ({a} {b} {c}); {count} failing triples"
                )
            }
            AxiomViolation::NoIdentity => write!(f, "no two-sided identity"),
            AxiomViolation::NoInverse { element } => write!(f, "element {element} has no inverse"),
        }
    }
}

/// A finite group with cached identity and inverses.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    name: String,
    table: CayleyTable,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Validates every axiom and fails with the first witness.
    pub fn from_table(name: impl Into<String>, table: CayleyTable) -> Result<Self> {
        if let Some(v) = table.axiom_violations().into_iter().next() {
            return Err(Error::InvalidTable(v.to_string()));
        }
        Ok(Self::from_table_unchecked(name, table))
    }

    fn from_table_unchecked(name: impl Into<String>, table: CayleyTable) -> Self {
        let n = table.order;
        let identity = table.find_identity().expect("group table without identity");
        let inverse = (0..n)
            .map(|g| {
                (0..n)
                    .find(|&h| table.product(g, h) == identity)
                    .expect("group table without inverses")
            })
            .collect();
        Self {
            name: name.into(),
            table,
            identity,
            inverse,
        }
    }

    fn from_fn(
        name: impl Into<String>,
        order: usize,
        labels: Vec<String>,
        mul: impl Fn(usize, usize) -> usize,
    ) -> Self {
        let mut entries = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                entries.push(mul(a, b));
            }
        }
        let table =
            CayleyTable::from_flat(order, entries, Some(labels)).expect("constructor table");
        Self::from_table_unchecked(name, table)
    }

    /// The cyclic group `C_n`, elements `g^k` at index `k`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("cyclic group of order 0".into()));
        }
        let labels = (0..n)
            .map(|k| match k {
                0 => "e".to_string(),
                1 => "g".to_string(),
                _ => format!("g^{k}"),
            })
            .collect();
        Ok(Self::from_fn(format!("C{n}"), n, labels, |a, b| {
            (a + b) % n
        }))
    }

    /// The dihedral group `D_n` of order `2n`; `r^k s^b` sits at index `b·n + k`.
    pub fn dihedral(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("dihedral group D0".into()));
        }
        let rot = |k: usize| match k {
            0 => String::new(),
            1 => "r".to_string(),
            _ => format!("r^{k}"),
        };
        let labels = (0..2 * n)
            .map(|i| {
                let (b, k) = (i / n, i % n);
                match (b, k) {
                    (0, 0) => "e".to_string(),
                    (0, k) => rot(k),
                    (_, k) => format!("{}s", rot(k)),
                }
            })
            .collect();
        Ok(Self::from_fn(format!("D{n}"), 2 * n, labels, |x, y| {
            let (b1, k1) = (x / n, x % n);
            let (b2, k2) = (y / n, y % n);
            // r^k1 s^b1 · r^k2 s^b2 = r^(k1 ± k2) s^(b1+b2)
            let k = if b1 == 0 {
                (k1 + k2) % n
            } else {
                (k1 + n - k2) % n
            };
            ((b1 + b2) % 2) * n + k
        }))
    }

    /// The symmetric group `S_n`, permutations in lexicographic one-line order,
    /// labelled in 1-based cycle notation. `(στ)(i) = σ(τ(i))`.
    pub fn symmetric(n: usize) -> Result<Self> {
        if n == 0 || n > 6 {
            return Err(Error::InvalidArgument(format!(
                "symmetric group S{n} is out of range"
            )));
        }
        let perms = permutations_lex(n);
        let index: HashMap<Vec<usize>, usize> = perms
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let labels = perms.iter().map(|p| cycle_notation(p)).collect();
        Ok(Self::from_fn(
            format!("S{n}"),
            perms.len(),
            labels,
            |a, b| {
                let composed: Vec<usize> = (0..n).map(|i| perms[a][perms[b][i]]).collect();
                index[&composed]
            },
        ))
    }

    /// The quaternion group `{±1, ±i, ±j, ±k}` at indices `1,-1,i,-i,j,-j,k,-k`.
    pub fn quaternion() -> Self {
        // unit · unit = (sign, unit) for units 1, i, j, k
        const UNIT_MUL: [[(bool, usize); 4]; 4] = [
            [(false, 0), (false, 1), (false, 2), (false, 3)],
            [(false, 1), (true, 0), (false, 3), (true, 2)],
            [(false, 2), (true, 3), (true, 0), (false, 1)],
            [(false, 3), (false, 2), (true, 1), (true, 0)],
        ];
        let labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        Self::from_fn("Q8", 8, labels, |a, b| {
            let (ua, na) = (a / 2, a % 2 == 1);
            let (ub, nb) = (b / 2, b % 2 == 1);
            let (neg, u) = UNIT_MUL[ua][ub];
            2 * u + usize::from(neg ^ na ^ nb)
        })
    }

    /// Direct product of the factors, mixed radix with the first factor most significant.
    pub fn direct_product(factors: &[&FiniteGroup]) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidArgument("empty direct product".into()));
        }
        if factors.len() == 1 {
            return Ok(factors[0].clone());
        }
        let order = factors
            .iter()
            .try_fold(1usize, |acc, f| acc.checked_mul(f.order()))
            .ok_or(Error::OrderCap {
                order: u128::MAX,
                cap: DEFAULT_ORDER_CAP,
            })?;
        let radices: Vec<usize> = factors.iter().map(|f| f.order()).collect();
        let split = |mut i: usize| {
            let mut digits = vec![0; radices.len()];
            for (slot, r) in digits.iter_mut().zip(&radices).rev() {
                *slot = i % r;
                i /= r;
            }
            digits
        };
        let join = |digits: &[usize]| {
            digits
                .iter()
                .zip(&radices)
                .fold(0, |acc, (d, r)| acc * r + d)
        };
        let labels = (0..order)
            .map(|i| {
                let parts: Vec<&str> = split(i)
                    .iter()
                    .zip(factors)
                    .map(|(&d, f)| f.label(d))
                    .collect();
                format!("({})", parts.join(","))
            })
            .collect();
        let name = factors
            .iter()
            .map(|f| f.name())
            .collect::<Vec<_>>()
            .join(" x ");
        Ok(Self::from_fn(name, order, labels, |a, b| {
            let (da, db) = (split(a), split(b));
            let prod: Vec<usize> = factors
                .iter()
                .enumerate()
                .map(|(k, f)| f.mul(da[k], db[k]))
                .collect();
            join(&prod)
        }))
    }

    /// `N ⋊_φ H` where `action[h][n]` is the image of `n` under `φ_h`.
    pub fn semidirect_product(
        name: impl Into<String>,
        normal: &FiniteGroup,
        acting: &FiniteGroup,
        action: &[Vec<usize>],
    ) -> Result<Self> {
        let (nn, nh) = (normal.order(), acting.order());
        if action.len() != nh {
            return Err(Error::NotAnAutomorphism(format!(
                "{} maps supplied for an acting group of order {nh}",
                action.len()
            )));
        }
        for (h, phi) in action.iter().enumerate() {
            if !normal.is_automorphism(phi) {
                return Err(Error::NotAnAutomorphism(format!(
                    "image of `{}` is not an automorphism of {}",
                    acting.label(h),
                    normal.name()
                )));
            }
        }
        for h1 in 0..nh {
            for h2 in 0..nh {
                let h12 = acting.mul(h1, h2);
                if (0..nn).any(|n| action[h12][n] != action[h1][action[h2][n]]) {
                    return Err(Error::NotAnAutomorphism(format!(
                        "action is not a homomorphism at ({}, {})",
                        acting.label(h1),
                        acting.label(h2)
                    )));
                }
            }
        }
        let labels = (0..nn * nh)
            .map(|i| format!("({},{})", normal.label(i % nn), acting.label(i / nn)))
            .collect();
        Ok(Self::from_fn(name, nn * nh, labels, |a, b| {
            let (n1, h1) = (a % nn, a / nn);
            let (n2, h2) = (b % nn, b / nn);
            acting.mul(h1, h2) * nn + normal.mul(n1, action[h1][n2])
        }))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn order(&self) -> usize {
        self.table.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table.product(a, b)
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `g·k·g⁻¹`
    pub fn conjugate(&self, g: usize, k: usize) -> usize {
        self.mul(self.mul(g, k), self.inv(g))
    }

    pub fn pow(&self, g: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, g))
    }

    pub fn label(&self, g: usize) -> &str {
        &self.table.labels[g]
    }

    pub fn labels(&self) -> &[String] {
        &self.table.labels
    }

    pub fn table(&self) -> &CayleyTable {
        &self.table
    }

    pub fn element_by_label(&self, label: &str) -> Result<usize> {
        let wanted: String = label.chars().filter(|c| !c.is_whitespace()).collect();
        self.table
            .labels
            .iter()
            .position(|l| *l == wanted)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (a + 1..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn center(&self) -> Vec<usize> {
        let n = self.order();
        (0..n)
            .filter(|&z| (0..n).all(|g| self.mul(z, g) == self.mul(g, z)))
            .collect()
    }

    pub fn commutator_subgroup(&self) -> Vec<usize> {
        let n = self.order();
        let mut comms = Vec::new();
        for a in 0..n {
            for b in 0..n {
                comms.push(self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b))));
            }
        }
        comms.sort_unstable();
        comms.dedup();
        self.generated_subgroup(&comms)
    }

    /// The subgroup generated by `gens`, sorted by index.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &s in gens {
                let y = self.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.order()).filter(|&g| seen[g]).collect()
    }

    /// A small generating set chosen greedily by index.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut sub = vec![self.identity];
        for g in 0..self.order() {
            if sub.binary_search(&g).is_err() {
                gens.push(g);
                sub = self.generated_subgroup(&gens);
            }
        }
        gens
    }

    /// A generator of the whole group, if it is cyclic.
    pub fn cyclic_generator(&self) -> Option<usize> {
        (0..self.order()).find(|&g| self.element_order(g) == self.order())
    }

    /// Checks that `elements` is a subgroup; returns it sorted and deduplicated.
    pub fn check_subgroup(&self, elements: &[usize]) -> Result<Vec<usize>> {
        let mut sub: Vec<usize> = elements.to_vec();
        sub.sort_unstable();
        sub.dedup();
        if let Some(&bad) = sub.iter().find(|&&g| g >= self.order()) {
            return Err(Error::NotSubgroup(format!("index {bad} is out of range")));
        }
        if sub.binary_search(&self.identity).is_err() {
            return Err(Error::NotSubgroup("identity missing".into()));
        }
        for &a in &sub {
            if sub.binary_search(&self.inv(a)).is_err() {
                return Err(Error::NotSubgroup(format!(
                    "inverse of `{}` missing",
                    self.label(a)
                )));
            }
            for &b in &sub {
                if sub.binary_search(&self.mul(a, b)).is_err() {
                    return Err(Error::NotSubgroup(format!(
                        "`{}`·`{}` leaves the set",
                        self.label(a),
                        self.label(b)
                    )));
                }
            }
        }
        Ok(sub)
    }

    /// First `(g, k)` with `g·k·g⁻¹ ∉ sub`, if any. `sub` must be sorted.
    pub fn normality_witness(&self, sub: &[usize]) -> Option<(usize, usize)> {
        (0..self.order()).find_map(|g| {
            sub.iter()
                .find(|&&k| sub.binary_search(&self.conjugate(g, k)).is_err())
                .map(|&k| (g, k))
        })
    }

    /// The subgroup as a group in its own right, plus the embedding `local → global`.
    pub fn subgroup(&self, elements: &[usize]) -> Result<(FiniteGroup, Vec<usize>)> {
        let embed = self.check_subgroup(elements)?;
        let local: HashMap<usize, usize> = embed.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let labels = embed.iter().map(|&g| self.label(g).to_string()).collect();
        let k = embed.len();
        let mut entries = Vec::with_capacity(k * k);
        for &a in &embed {
            for &b in &embed {
                entries.push(local[&self.mul(a, b)]);
            }
        }
        let table = CayleyTable::from_flat(k, entries, Some(labels))?;
        let name = format!(
            "<{}>",
            self.generators_of(&embed)
                .iter()
                .map(|&g| self.label(g))
                .collect::<Vec<_>>()
                .join(",")
        );
        Ok((Self::from_table_unchecked(name, table), embed))
    }

    fn generators_of(&self, sub: &[usize]) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![self.identity];
        for &g in sub {
            if span.binary_search(&g).is_err() {
                gens.push(g);
                span = self.generated_subgroup(&gens);
            }
        }
        gens
    }

    /// True iff `perm` is a bijective homomorphism of this group onto itself.
    pub fn is_automorphism(&self, perm: &[usize]) -> bool {
        let n = self.order();
        if perm.len() != n {
            return false;
        }
        let mut hit = vec![false; n];
        for &p in perm {
            if p >= n || std::mem::replace(&mut hit[p], true) {
                return false;
            }
        }
        (0..n).all(|a| (0..n).all(|b| perm[self.mul(a, b)] == self.mul(perm[a], perm[b])))
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self.name, self.order())
    }
}

/// Extends `gens[i] ↦ images[i]` to a homomorphism `src → dst`.
///
/// Returns `None` if the assignment is inconsistent or `gens` does not generate `src`.
pub fn extend_homomorphism(
    src: &FiniteGroup,
    dst: &FiniteGroup,
    gens: &[usize],
    images: &[usize],
) -> Option<Vec<usize>> {
    let mut map: Vec<Option<usize>> = vec![None; src.order()];
    map[src.identity()] = Some(dst.identity());
    let mut queue = VecDeque::from([src.identity()]);
    while let Some(x) = queue.pop_front() {
        let fx = map[x].expect("queued elements are mapped");
        for (&s, &img) in gens.iter().zip(images) {
            let y = src.mul(x, s);
            let fy = dst.mul(fx, img);
            match map[y] {
                None => {
                    map[y] = Some(fy);
                    queue.push_back(y);
                }
                Some(existing) if existing != fy => return None,
                Some(_) => {}
            }
        }
    }
    map.into_iter().collect()
}

/// Exhaustive isomorphism search for groups of order at most [`ISOMORPHISM_CAP`].
pub fn find_isomorphism(a: &FiniteGroup, b: &FiniteGroup) -> Result<Option<Vec<usize>>> {
    if a.order().max(b.order()) > ISOMORPHISM_CAP {
        return Err(Error::InvalidArgument(format!(
            "isomorphism search is capped at order {ISOMORPHISM_CAP}"
        )));
    }
    if a.order() != b.order() {
        return Ok(None);
    }
    let gens = a.generators();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| {
            let ord = a.element_order(g);
            (0..b.order())
                .filter(|&h| b.element_order(h) == ord)
                .collect()
        })
        .collect();
    let mut images = vec![0; gens.len()];
    Ok(search_images(a, b, &gens, &candidates, &mut images, 0))
}

fn search_images(
    a: &FiniteGroup,
    b: &FiniteGroup,
    gens: &[usize],
    candidates: &[Vec<usize>],
    images: &mut Vec<usize>,
    depth: usize,
) -> Option<Vec<usize>> {
    if depth == gens.len() {
        let map = extend_homomorphism(a, b, gens, images)?;
        let mut hit = vec![false; b.order()];
        for &m in &map {
            hit[m] = true;
        }
        return hit.iter().all(|&h| h).then_some(map);
    }
    for &c in &candidates[depth] {
        images[depth] = c;
        if let Some(map) = search_images(a, b, gens, candidates, images, depth + 1) {
            return Some(map);
        }
    }
    None
}

/// All permutations of `0..n` in lexicographic order; index `i` here is element `i` of `S_n`.
pub(crate) fn permutations_lex(n: usize) -> Vec<Vec<usize>> {
    let mut perms = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        perms.push(current.clone());
        if !next_permutation(&mut current) {
            break;
        }
    }
    perms
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| p[i] < p[i + 1]) else {
        return false;
    };
    let j = (i + 1..n)
        .rev()
        .find(|&j| p[j] > p[i])
        .expect("successor exists");
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        out.push('(');
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            out.push_str(&(i + 1).to_string());
            i = p[i];
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push('e');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructors_satisfy_axioms() {
        let groups = [
            FiniteGroup::cyclic(6).unwrap(),
            FiniteGroup::dihedral(4).unwrap(),
            FiniteGroup::symmetric(4).unwrap(),
            FiniteGroup::quaternion(),
        ];
        for g in &groups {
            assert!(g.table().axiom_violations().is_empty(), "{g}");
            assert_eq!(g.identity(), 0);
        }
    }

    #[test]
    fn quaternion_center_and_involutions() {
        let q = FiniteGroup::quaternion();
        assert_eq!(q.center(), vec![0, 1]);
        let order_two: Vec<usize> = (0..8).filter(|&g| q.element_order(g) == 2).collect();
        assert_eq!(order_two, vec![1]);
        assert!(!q.is_abelian());
        let (i, j, k) = (2, 4, 6);
        assert_eq!(q.mul(i, j), k);
        assert_eq!(q.mul(j, i), 7);
        assert_eq!(q.mul(j, j), 1);
    }

    #[test]
    fn symmetric_group_labels_and_order() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.label(0), "e");
        assert!(s3.element_by_label("(12)").is_ok());
        assert!(!s3.is_abelian());
        assert_eq!(s3.commutator_subgroup().len(), 3);
    }

    #[test]
    fn transposed_entry_yields_associativity_witness() {
        let mut t = FiniteGroup::cyclic(6).unwrap().table().clone();
        // swap two entries of one row
        let (x, y) = (t.product(1, 2), t.product(1, 3));
        t.set_product(1, 2, y);
        t.set_product(1, 3, x);
        let v = t.axiom_violations();
        assert!(
            matches!(v[0], AxiomViolation::Associativity { .. }),
            "{v:?}"
        );
        assert!(FiniteGroup::from_table("bad", t).is_err());
    }

    #[test]
    fn table_parsing_rejects_out_of_range() {
        assert!(CayleyTable::parse("0 1\n1 2\n").is_err());
        let t = CayleyTable::parse("# C2\n0 1\n1 0\n").unwrap();
        assert!(t.axiom_violations().is_empty());
    }

    #[test]
    fn isomorphism_search() {
        let d4 = FiniteGroup::dihedral(4).unwrap();
        let q8 = FiniteGroup::quaternion();
        let c8 = FiniteGroup::cyclic(8).unwrap();
        assert!(find_isomorphism(&d4, &d4).unwrap().is_some());
        assert!(find_isomorphism(&d4, &q8).unwrap().is_none());
        assert!(find_isomorphism(&c8, &q8).unwrap().is_none());
        let s5 = FiniteGroup::symmetric(5).unwrap();
        assert!(find_isomorphism(&s5, &s5).is_err());
    }

    #[test]
    fn semidirect_product_rejects_non_automorphism() {
        let c4 = FiniteGroup::cyclic(4).unwrap();
        let c2 = FiniteGroup::cyclic(2).unwrap();
        // doubling is not bijective on C4
        let bad = vec![vec![0, 1, 2, 3], vec![0, 2, 0, 2]];
        assert!(matches!(
            FiniteGroup::semidirect_product("x", &c4, &c2, &bad),
            Err(Error::NotAnAutomorphism(_))
        ));
    }

    #[test]
    fn subgroup_and_normality() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let t = s3.element_by_label("(12)").unwrap();
        let sub = s3.generated_subgroup(&[t]);
        assert_eq!(sub.len(), 2);
        assert!(s3.normality_witness(&sub).is_some());
        let (k, embed) = s3.subgroup(&s3.commutator_subgroup()).unwrap();
        assert_eq!(k.order(), 3);
        assert_eq!(embed[0], 0);
        assert!(s3.check_subgroup(&[0, t, 3]).is_err());
    }
}
