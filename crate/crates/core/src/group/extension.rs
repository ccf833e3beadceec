//! Quotients, sections and the cocycle of a finite group extension `K ↪ G ↠ H`.

use std::fmt;
use std::str::FromStr;

use super::{build_group_with_cap, extend_homomorphism, FiniteGroup, GroupExpr, DEFAULT_ORDER_CAP};
use crate::error::{Error, Result};

/// `H = G/K` together with `π: G → H`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: FiniteGroup,
    pub projection: Vec<usize>,
    /// Minimal-index element of each coset.
    pub representatives: Vec<usize>,
}

/// Forms `G/K`. Cosets are numbered by their minimal element.
pub fn quotient(g: &FiniteGroup, kernel: &[usize]) -> Result<Quotient> {
    let k = g.check_subgroup(kernel)?;
    if let Some((x, y)) = g.normality_witness(&k) {
        return Err(Error::NotNormal {
            g: g.label(x).to_string(),
            k: g.label(y).to_string(),
        });
    }
    let n = g.order();
    let mut projection = vec![usize::MAX; n];
    let mut representatives = Vec::with_capacity(n / k.len());
    for x in 0..n {
        if projection[x] == usize::MAX {
            let coset = representatives.len();
            representatives.push(x);
            for &kk in &k {
                projection[g.mul(x, kk)] = coset;
            }
        }
    }
    let m = representatives.len();
    let mut rows = Vec::with_capacity(m);
    for &a in &representatives {
        rows.push(
            representatives
                .iter()
                .map(|&b| projection[g.mul(a, b)])
                .collect(),
        );
    }
    let labels = representatives
        .iter()
        .map(|&r| g.label(r).to_string())
        .collect();
    let table = super::CayleyTable::new(rows, Some(labels))?;
    let group = FiniteGroup::from_table_unchecked(format!("{}/K", g.name()), table);
    Ok(Quotient {
        group,
        projection,
        representatives,
    })
}

/// The minimal-index element of every coset, except that the identity coset maps to
/// the identity of G.
pub fn choose_section(g: &FiniteGroup, quotient: &Quotient) -> Vec<usize> {
    let mut section = quotient.representatives.clone();
    section[quotient.group.identity()] = g.identity();
    section
}

/// The table `τ(x, y) = η(x)·η(y)·η(xy)⁻¹`, stored as elements of G.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle {
    order: usize,
    values: Vec<usize>,
    identity: usize,
}

impl Cocycle {
    #[inline]
    pub fn get(&self, x: usize, y: usize) -> usize {
        self.values[x * self.order + y]
    }

    /// True iff τ is identically the identity, i.e. the section is a homomorphism.
    pub fn is_split(&self) -> bool {
        self.values.iter().all(|&t| t == self.identity)
    }
}

/// Computes τ for a section η of `π: G → H`.
pub fn cocycle_tau(
    g: &FiniteGroup,
    h: &FiniteGroup,
    projection: &[usize],
    section: &[usize],
) -> Result<Cocycle> {
    if section.len() != h.order() {
        return Err(Error::InvalidSection(format!(
            "{} values for a quotient of order {}",
            section.len(),
            h.order()
        )));
    }
    if section[h.identity()] != g.identity() {
        return Err(Error::InvalidSection("η(e) is not the identity".into()));
    }
    if let Some(x) =
        (0..h.order()).find(|&x| section[x] >= g.order() || projection[section[x]] != x)
    {
        return Err(Error::InvalidSection(format!(
            "π(η({})) ≠ {}",
            h.label(x),
            h.label(x)
        )));
    }
    let m = h.order();
    let mut values = Vec::with_capacity(m * m);
    for x in 0..m {
        for y in 0..m {
            let t = g.mul(g.mul(section[x], section[y]), g.inv(section[h.mul(x, y)]));
            debug_assert_eq!(projection[t], h.identity());
            values.push(t);
        }
    }
    Ok(Cocycle {
        order: m,
        values,
        identity: g.identity(),
    })
}

/// A normal subgroup K of G with quotient H, a section η and its cocycle τ.
#[derive(Clone, Debug)]
pub struct GroupExtension {
    label: String,
    total: FiniteGroup,
    kernel: Vec<usize>,
    kernel_group: FiniteGroup,
    kernel_local: Vec<Option<usize>>,
    quotient: FiniteGroup,
    projection: Vec<usize>,
    section: Vec<usize>,
    tau: Cocycle,
}

impl GroupExtension {
    /// Builds the extension with the minimal-index section from [`choose_section`].
    pub fn new(total: FiniteGroup, kernel: &[usize]) -> Result<Self> {
        let q = quotient(&total, kernel)?;
        let section = choose_section(&total, &q);
        let (kernel_group, embed) = total.subgroup(kernel)?;
        let mut kernel_local = vec![None; total.order()];
        for (i, &g) in embed.iter().enumerate() {
            kernel_local[g] = Some(i);
        }
        let tau = cocycle_tau(&total, &q.group, &q.projection, &section)?;
        let label = format!("{} / {}", total.name(), kernel_group.name());
        let quotient_group = q
            .group
            .with_name(format!("{}/{}", total.name(), kernel_group.name()));
        Ok(Self {
            label,
            total,
            kernel: embed,
            kernel_group,
            kernel_local,
            quotient: quotient_group,
            projection: q.projection,
            section,
            tau,
        })
    }

    /// Same extension, different section.
    pub fn with_section(&self, section: Vec<usize>) -> Result<Self> {
        let tau = cocycle_tau(&self.total, &self.quotient, &self.projection, &section)?;
        Ok(Self {
            section,
            tau,
            ..self.clone()
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn total(&self) -> &FiniteGroup {
        &self.total
    }

    /// Kernel elements as indices of G, sorted.
    pub fn kernel(&self) -> &[usize] {
        &self.kernel
    }

    /// K as a group in its own right; local index `i` is global element `kernel()[i]`.
    pub fn kernel_group(&self) -> &FiniteGroup {
        &self.kernel_group
    }

    pub fn kernel_local(&self, g: usize) -> Option<usize> {
        self.kernel_local[g]
    }

    pub fn quotient(&self) -> &FiniteGroup {
        &self.quotient
    }

    pub fn projection(&self) -> &[usize] {
        &self.projection
    }

    pub fn section(&self) -> &[usize] {
        &self.section
    }

    pub fn cocycle(&self) -> &Cocycle {
        &self.tau
    }

    /// τ(x, y) as an element of G.
    pub fn tau(&self, x: usize, y: usize) -> usize {
        self.tau.get(x, y)
    }

    /// τ(x, y) as a local index of K.
    pub fn tau_local(&self, x: usize, y: usize) -> usize {
        self.kernel_local[self.tau(x, y)].expect("τ takes values in K")
    }

    pub fn is_split(&self) -> bool {
        self.tau.is_split()
    }

    /// Searches for a section that is a group homomorphism `H → G`.
    pub fn homomorphic_section(&self) -> Option<Vec<usize>> {
        let h = &self.quotient;
        let gens = h.generators();
        let candidates: Vec<Vec<usize>> = gens
            .iter()
            .map(|&x| {
                (0..self.total.order())
                    .filter(|&g| self.projection[g] == x)
                    .collect()
            })
            .collect();
        let mut images = vec![0; gens.len()];
        self.search(&gens, &candidates, &mut images, 0)
    }

    fn search(
        &self,
        gens: &[usize],
        candidates: &[Vec<usize>],
        images: &mut Vec<usize>,
        depth: usize,
    ) -> Option<Vec<usize>> {
        if depth == gens.len() {
            return extend_homomorphism(&self.quotient, &self.total, gens, images);
        }
        for &c in &candidates[depth] {
            images[depth] = c;
            if let Some(s) = self.search(gens, candidates, images, depth + 1) {
                return Some(s);
            }
        }
        None
    }

    /// The same extension re-sectioned by a homomorphism, if one exists.
    pub fn split(&self) -> Option<Self> {
        if self.is_split() {
            return Some(self.clone());
        }
        self.homomorphic_section()
            .and_then(|s| self.with_section(s).ok())
    }

    /// Lists violated extension invariants; empty for every extension built by [`GroupExtension::new`].
    pub fn invariant_violations(&self) -> Vec<String> {
        let g = &self.total;
        let h = &self.quotient;
        let mut out = Vec::new();
        if let Some((x, k)) = g.normality_witness(&self.kernel) {
            out.push(format!(
                "kernel not normal: {}·{}·{}⁻¹",
                g.label(x),
                g.label(k),
                g.label(x)
            ));
        }
        for a in 0..g.order() {
            for b in 0..g.order() {
                if self.projection[g.mul(a, b)] != h.mul(self.projection[a], self.projection[b]) {
                    out.push(format!(
                        "π not multiplicative at ({}, {})",
                        g.label(a),
                        g.label(b)
                    ));
                    return out;
                }
            }
        }
        let ker: Vec<usize> = (0..g.order())
            .filter(|&x| self.projection[x] == h.identity())
            .collect();
        if ker != self.kernel {
            out.push("ker π differs from K".into());
        }
        if let Some(x) = (0..h.order()).find(|&x| self.projection[self.section[x]] != x) {
            out.push(format!("π(η({0})) ≠ {0}", h.label(x)));
        }
        if self.section[h.identity()] != g.identity() {
            out.push("η(e) ≠ e".into());
        }
        for x in 0..h.order() {
            for y in 0..h.order() {
                if self.kernel_local[self.tau(x, y)].is_none() {
                    out.push(format!("τ({}, {}) ∉ K", h.label(x), h.label(y)));
                }
            }
        }
        out
    }
}

impl fmt::Display for GroupExtension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

/// Picks the kernel K inside a group built from an expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KernelSelector {
    /// `<a, b, …>`: subgroup generated by the labelled elements.
    Generators(Vec<String>),
    /// Normal factor of an `sd(…)` or `wr(…)` expression.
    Base,
    Center,
    Derived,
    Trivial,
    Whole,
}

impl fmt::Display for KernelSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KernelSelector::Generators(gs) => write!(f, "<{}>", gs.join(",")),
            KernelSelector::Base => f.write_str("base"),
            KernelSelector::Center => f.write_str("center"),
            KernelSelector::Derived => f.write_str("derived"),
            KernelSelector::Trivial => f.write_str("trivial"),
            KernelSelector::Whole => f.write_str("whole"),
        }
    }
}

/// `"G / K-selector"`, e.g. `Q8 / <i>` or `wr(C2,3,cyc) / base`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionSpec {
    pub group: GroupExpr,
    pub kernel: KernelSelector,
}

impl FromStr for ExtensionSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let Some(slash) = s.find('/') else {
            s.parse::<GroupExpr>()?;
            return Err(Error::Parse {
                position: s.len(),
                expected: vec!["/".into()],
                found: "end of input".into(),
            });
        };
        let group: GroupExpr = s[..slash].parse()?;
        let raw = &s[slash + 1..];
        let sel = raw.trim();
        let offset = slash + 1 + (raw.len() - raw.trim_start().len());
        let kernel = match sel {
            "base" => KernelSelector::Base,
            "center" => KernelSelector::Center,
            "derived" => KernelSelector::Derived,
            "trivial" => KernelSelector::Trivial,
            "whole" => KernelSelector::Whole,
            _ if sel.starts_with('<') && sel.ends_with('>') && sel.len() >= 2 => {
                let inner = &sel[1..sel.len() - 1];
                let gens: Vec<String> = split_top_level(inner)
                    .into_iter()
                    .map(|g| g.chars().filter(|c| !c.is_whitespace()).collect::<String>())
                    .filter(|g| !g.is_empty())
                    .collect();
                KernelSelector::Generators(gens)
            }
            _ => {
                return Err(Error::Parse {
                    position: offset,
                    expected: ["<labels>", "base", "center", "derived", "trivial", "whole"]
                        .iter()
                        .map(|s| s.to_string())
                        .collect(),
                    found: format!("`{sel}`"),
                })
            }
        };
        Ok(Self { group, kernel })
    }
}

impl fmt::Display for ExtensionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} / {}", self.group, self.kernel)
    }
}

impl ExtensionSpec {
    pub fn build(&self) -> Result<GroupExtension> {
        self.build_with_cap(DEFAULT_ORDER_CAP)
    }

    pub fn build_with_cap(&self, cap: usize) -> Result<GroupExtension> {
        let g = build_group_with_cap(&self.group, cap)?;
        let kernel = match &self.kernel {
            KernelSelector::Generators(labels) => {
                let gens = labels
                    .iter()
                    .map(|l| g.element_by_label(l))
                    .collect::<Result<Vec<_>>>()?;
                g.generated_subgroup(&gens)
            }
            KernelSelector::Base => {
                let n = self.group.base_order().ok_or_else(|| {
                    Error::InvalidArgument(format!(
                        "`base` needs an sd(...) or wr(...) group, got {}",
                        self.group
                    ))
                })?;
                (0..n).collect()
            }
            KernelSelector::Center => g.center(),
            KernelSelector::Derived => g.commutator_subgroup(),
            KernelSelector::Trivial => vec![g.identity()],
            KernelSelector::Whole => (0..g.order()).collect(),
        };
        Ok(GroupExtension::new(g, &kernel)?.with_label(self.to_string()))
    }
}

/// Splits on commas that are not nested inside brackets.
fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}
