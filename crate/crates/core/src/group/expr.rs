//! The group-expression language.
//!
//! ```text
//! atom   := "C" n | "D" n | "S" n | "Q8"
//! expr   := term ("x" term)*
//! term   := atom | "sd(" expr "," expr "," action ")" | "wr(" expr "," n "," action ")"
//! ```
//!
//! Whitespace is ignored between tokens; atoms are case-sensitive. `D n` is the
//! dihedral group of order `2n`.
//!
//! Actions for `sd(N, H, ·)`: `triv`; `inv` (N abelian, `h` inverts iff left
//! multiplication by `h` is an odd permutation of H); `cyc` (N a power `M x … x M`,
//! H cyclic, the k-th power of the generator rotates coordinates by k).
//! Actions for `wr(K, n, ·)`: `cyc` (acting group `C_n`), `sym` (`S_n` permuting
//! coordinates), `inv` (`C_2` inverting every coordinate, K abelian).

use std::fmt;
use std::str::FromStr;

use super::{permutations_lex, FiniteGroup};
use crate::error::{Error, Result};

pub const DEFAULT_ORDER_CAP: usize = 512;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupExpr {
    Cyclic(usize),
    Dihedral(usize),
    Symmetric(usize),
    Quaternion,
    /// Always flat: a factor is never itself a `Product`.
    Product(Vec<GroupExpr>),
    Semidirect {
        normal: Box<GroupExpr>,
        acting: Box<GroupExpr>,
        action: String,
    },
    Wreath {
        base: Box<GroupExpr>,
        copies: usize,
        action: String,
    },
}

impl GroupExpr {
    /// Order of the group this expression denotes, saturating on overflow.
    pub fn order(&self) -> Result<u128> {
        Ok(match self {
            GroupExpr::Cyclic(n) => *n as u128,
            GroupExpr::Dihedral(n) => 2 * *n as u128,
            GroupExpr::Symmetric(n) => (1..=*n as u128).fold(1u128, |a, b| a.saturating_mul(b)),
            GroupExpr::Quaternion => 8,
            GroupExpr::Product(fs) => fs
                .iter()
                .try_fold(1u128, |acc, f| f.order().map(|o| acc.saturating_mul(o)))?,
            GroupExpr::Semidirect { normal, acting, .. } => {
                normal.order()?.saturating_mul(acting.order()?)
            }
            GroupExpr::Wreath {
                base,
                copies,
                action,
            } => {
                let b = base.order()?;
                let power = (0..*copies).fold(1u128, |acc, _| acc.saturating_mul(b));
                let top: u128 = match action.as_str() {
                    "cyc" => *copies as u128,
                    "sym" => GroupExpr::Symmetric(*copies).order()?,
                    "inv" => 2,
                    other => return Err(Error::UnknownAction(other.to_string())),
                };
                power.saturating_mul(top)
            }
        })
    }

    /// Order of the normal factor for `sd`/`wr` expressions.
    pub fn base_order(&self) -> Option<usize> {
        match self {
            GroupExpr::Semidirect { normal, .. } => normal.order().ok().map(|o| o as usize),
            GroupExpr::Wreath { base, copies, .. } => {
                base.order().ok().map(|o| (o as usize).pow(*copies as u32))
            }
            _ => None,
        }
    }
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupExpr::Cyclic(n) => write!(f, "C{n}"),
            GroupExpr::Dihedral(n) => write!(f, "D{n}"),
            GroupExpr::Symmetric(n) => write!(f, "S{n}"),
            GroupExpr::Quaternion => write!(f, "Q8"),
            GroupExpr::Product(fs) => {
                for (i, factor) in fs.iter().enumerate() {
                    if i > 0 {
                        write!(f, " x ")?;
                    }
                    write!(f, "{factor}")?;
                }
                Ok(())
            }
            GroupExpr::Semidirect {
                normal,
                acting,
                action,
            } => {
                write!(f, "sd({normal}, {acting}, {action})")
            }
            GroupExpr::Wreath {
                base,
                copies,
                action,
            } => write!(f, "wr({base}, {copies}, {action})"),
        }
    }
}

impl FromStr for GroupExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser::new(s);
        let expr = p.expr()?;
        p.skip_ws();
        if p.pos < p.src.len() {
            return Err(p.error(&["x", "end of input"]));
        }
        Ok(expr)
    }
}

pub(crate) struct Parser<'a> {
    src: &'a [u8],
    pub(crate) pos: usize,
}

impl<'a> Parser<'a> {
    pub(crate) fn new(src: &'a str) -> Self {
        Self {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn error(&self, expected: &[&str]) -> Error {
        let found = match self.src.get(self.pos..) {
            Some(rest) if !rest.is_empty() => {
                let end = rest.len().min(8);
                format!("`{}`", String::from_utf8_lossy(&rest[..end]))
            }
            _ => "end of input".to_string(),
        };
        Error::Parse {
            position: self.pos,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found,
        }
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(token.as_bytes()) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(&[token]))
        }
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        match digits.parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => {
                self.pos = start;
                Err(self.error(&["positive integer"]))
            }
        }
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self
            .peek()
            .is_some_and(|c| c.is_ascii_alphanumeric() || c == b'_')
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error(&["action name"]));
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    pub(crate) fn expr(&mut self) -> Result<GroupExpr> {
        let mut factors = vec![self.term()?];
        while self.eat("x") {
            factors.push(self.term()?);
        }
        Ok(if factors.len() == 1 {
            factors.pop().expect("one factor")
        } else {
            GroupExpr::Product(factors)
        })
    }

    fn term(&mut self) -> Result<GroupExpr> {
        const START: [&str; 6] = ["C<n>", "D<n>", "S<n>", "Q8", "sd(", "wr("];
        self.skip_ws();
        if self.eat("sd") {
            self.expect("(")?;
            let normal = self.expr()?;
            self.expect(",")?;
            let acting = self.expr()?;
            self.expect(",")?;
            let action = self.ident()?;
            self.expect(")")?;
            return Ok(GroupExpr::Semidirect {
                normal: Box::new(normal),
                acting: Box::new(acting),
                action,
            });
        }
        if self.eat("wr") {
            self.expect("(")?;
            let base = self.expr()?;
            self.expect(",")?;
            let copies = self.number()?;
            self.expect(",")?;
            let action = self.ident()?;
            self.expect(")")?;
            return Ok(GroupExpr::Wreath {
                base: Box::new(base),
                copies,
                action,
            });
        }
        if self.eat("Q8") {
            return Ok(GroupExpr::Quaternion);
        }
        let ctor: fn(usize) -> GroupExpr = match self.peek() {
            Some(b'C') => GroupExpr::Cyclic,
            Some(b'D') => GroupExpr::Dihedral,
            Some(b'S') => GroupExpr::Symmetric,
            _ => return Err(self.error(&START)),
        };
        self.pos += 1;
        if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
            return Err(self.error(&["positive integer"]));
        }
        Ok(ctor(self.number()?))
    }
}

/// Builds the group denoted by `expr`, refusing orders above [`DEFAULT_ORDER_CAP`].
pub fn build_group(expr: &GroupExpr) -> Result<FiniteGroup> {
    build_group_with_cap(expr, DEFAULT_ORDER_CAP)
}

impl FromStr for FiniteGroup {
    type Err = Error;

    /// Parses and builds a group expression under [`DEFAULT_ORDER_CAP`].
    fn from_str(s: &str) -> Result<Self> {
        build_group(&s.parse()?)
    }
}

pub fn build_group_with_cap(expr: &GroupExpr, cap: usize) -> Result<FiniteGroup> {
    let order = expr.order()?;
    if order > cap as u128 {
        return Err(Error::OrderCap { order, cap });
    }
    Ok(build(expr)?.with_name(expr.to_string()))
}

fn build(expr: &GroupExpr) -> Result<FiniteGroup> {
    match expr {
        GroupExpr::Cyclic(n) => FiniteGroup::cyclic(*n),
        GroupExpr::Dihedral(n) => FiniteGroup::dihedral(*n),
        GroupExpr::Symmetric(n) => FiniteGroup::symmetric(*n),
        GroupExpr::Quaternion => Ok(FiniteGroup::quaternion()),
        GroupExpr::Product(fs) => {
            let groups = fs.iter().map(build).collect::<Result<Vec<_>>>()?;
            FiniteGroup::direct_product(&groups.iter().collect::<Vec<_>>())
        }
        GroupExpr::Semidirect {
            normal,
            acting,
            action,
        } => {
            let n = build(normal)?;
            let h = build(acting)?;
            let maps = match action.as_str() {
                "triv" => vec![(0..n.order()).collect(); h.order()],
                "inv" => inversion_by_parity(&n, &h)?,
                "cyc" => {
                    let copies = match normal.as_ref() {
                        GroupExpr::Product(fs) if fs.iter().all(|f| f == &fs[0]) => fs.len(),
                        _ => {
                            return Err(Error::NotAnAutomorphism(format!(
                                "`cyc` needs a power M x ... x M as kernel factor, got {normal}"
                            )))
                        }
                    };
                    let gen = h.cyclic_generator().ok_or_else(|| {
                        Error::NotAnAutomorphism(format!(
                            "`cyc` needs a cyclic acting group, got {acting}"
                        ))
                    })?;
                    let radix =
                        integer_root(n.order(), copies).expect("power of identical factors");
                    let mut maps = vec![Vec::new(); h.order()];
                    let mut x = h.identity();
                    for k in 0..h.order() {
                        maps[x] = rotation(radix, copies, k % copies);
                        x = h.mul(x, gen);
                    }
                    maps
                }
                other => return Err(Error::UnknownAction(other.to_string())),
            };
            FiniteGroup::semidirect_product(expr.to_string(), &n, &h, &maps)
        }
        GroupExpr::Wreath {
            base,
            copies,
            action,
        } => {
            let k = build(base)?;
            let power = FiniteGroup::direct_product(&vec![&k; *copies])?;
            let (top, maps) = match action.as_str() {
                "cyc" => {
                    let top = FiniteGroup::cyclic(*copies)?;
                    let maps = (0..*copies)
                        .map(|s| rotation(k.order(), *copies, s))
                        .collect();
                    (top, maps)
                }
                "sym" => {
                    let top = FiniteGroup::symmetric(*copies)?;
                    let maps = permutations_lex(*copies)
                        .iter()
                        .map(|sigma| coordinate_permutation(k.order(), sigma))
                        .collect();
                    (top, maps)
                }
                "inv" => {
                    if !k.is_abelian() {
                        return Err(Error::NotAnAutomorphism(format!(
                            "`inv` needs an abelian base, {base} is not"
                        )));
                    }
                    let top = FiniteGroup::cyclic(2)?;
                    let invert = (0..power.order()).map(|g| power.inv(g)).collect();
                    (top, vec![(0..power.order()).collect(), invert])
                }
                other => return Err(Error::UnknownAction(other.to_string())),
            };
            FiniteGroup::semidirect_product(expr.to_string(), &power, &top, &maps)
        }
    }
}

fn integer_root(value: usize, k: usize) -> Option<usize> {
    (1..=value).find(|r| r.checked_pow(k as u32) == Some(value))
}

/// `h` acts by inversion iff left multiplication by `h` is an odd permutation of H.
fn inversion_by_parity(n: &FiniteGroup, h: &FiniteGroup) -> Result<Vec<Vec<usize>>> {
    if !n.is_abelian() {
        return Err(Error::NotAnAutomorphism(format!(
            "`inv` needs an abelian kernel factor, {} is not",
            n.name()
        )));
    }
    let identity: Vec<usize> = (0..n.order()).collect();
    let inversion: Vec<usize> = (0..n.order()).map(|g| n.inv(g)).collect();
    Ok((0..h.order())
        .map(|x| {
            let m = h.element_order(x);
            // m-cycles, |H|/m of them
            let odd = (m - 1) * (h.order() / m) % 2 == 1;
            if odd {
                inversion.clone()
            } else {
                identity.clone()
            }
        })
        .collect())
}

fn digits(mut i: usize, radix: usize, len: usize) -> Vec<usize> {
    let mut d = vec![0; len];
    for slot in d.iter_mut().rev() {
        *slot = i % radix;
        i /= radix;
    }
    d
}

fn undigits(d: &[usize], radix: usize) -> usize {
    d.iter().fold(0, |acc, &x| acc * radix + x)
}

/// Coordinate `i` of the image is coordinate `i - shift` of the argument.
fn rotation(radix: usize, len: usize, shift: usize) -> Vec<usize> {
    let total = radix.pow(len as u32);
    (0..total)
        .map(|g| {
            let d = digits(g, radix, len);
            let rotated: Vec<usize> = (0..len).map(|i| d[(i + len - shift % len) % len]).collect();
            undigits(&rotated, radix)
        })
        .collect()
}

/// `(σ·a)_{σ(i)} = a_i`
fn coordinate_permutation(radix: usize, sigma: &[usize]) -> Vec<usize> {
    let len = sigma.len();
    let total = radix.pow(len as u32);
    (0..total)
        .map(|g| {
            let d = digits(g, radix, len);
            let mut out = vec![0; len];
            for i in 0..len {
                out[sigma[i]] = d[i];
            }
            undigits(&out, radix)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::find_isomorphism;

    fn group(s: &str) -> FiniteGroup {
        build_group(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn atoms() {
        let c4 = group("C4");
        assert_eq!(c4.order(), 4);
        assert!(c4.is_abelian());
        assert_eq!(group("D5").order(), 10);
        assert_eq!(group("S4").order(), 24);
        assert_eq!(group(" Q8 ").order(), 8);
    }

    #[test]
    fn semidirect_inversion_is_dihedral() {
        let g = group("sd(C4,C2,inv)");
        assert_eq!(g.order(), 8);
        assert!(!g.is_abelian());
        assert!(find_isomorphism(&g, &group("D4")).unwrap().is_some());
        assert!(find_isomorphism(&g, &group("Q8")).unwrap().is_none());
    }

    #[test]
    fn wreath_cyclic_rotation() {
        let g = group("wr(C2,3,cyc)");
        assert_eq!(g.order(), 24);
        assert!(g.table().axiom_violations().is_empty());
        assert!(!g.is_abelian());
        let same = group("sd(C2 x C2 x C2, C3, cyc)");
        assert_eq!(same.table(), g.table());
        assert_eq!(group("wr(C2,3,sym)").order(), 48);
        assert_eq!(group("wr(C3,2,inv)").order(), 18);
    }

    #[test]
    fn product_orders_and_labels() {
        let g = group("C2 x C4");
        assert_eq!(g.order(), 8);
        assert_eq!(g.label(5), "(g,g)");
        assert!(g.is_abelian());
    }

    #[test]
    fn errors() {
        assert!(matches!(
            "C".parse::<GroupExpr>(),
            Err(Error::Parse { position: 1, .. })
        ));
        assert!(matches!(
            "c4".parse::<GroupExpr>(),
            Err(Error::Parse { position: 0, .. })
        ));
        assert!(matches!(
            "C4 x".parse::<GroupExpr>(),
            Err(Error::Parse { position: 4, .. })
        ));
        assert!(matches!(
            "sd(C4,C2 inv)".parse::<GroupExpr>(),
            Err(Error::Parse { position: 9, .. })
        ));
        assert!(matches!(
            "C0".parse::<GroupExpr>(),
            Err(Error::Parse { .. })
        ));
        let e: GroupExpr = "sd(C4,C2,flip)".parse().unwrap();
        assert!(matches!(build_group(&e), Err(Error::UnknownAction(_))));
        let e: GroupExpr = "sd(S3,C2,inv)".parse().unwrap();
        assert!(matches!(build_group(&e), Err(Error::NotAnAutomorphism(_))));
        let e: GroupExpr = "sd(C2 x C2, C3, cyc)".parse().unwrap();
        assert!(matches!(build_group(&e), Err(Error::NotAnAutomorphism(_))));
        let e: GroupExpr = "S6".parse().unwrap();
        assert!(matches!(
            build_group(&e),
            Err(Error::OrderCap {
                order: 720,
                cap: 512
            })
        ));
        let e: GroupExpr = "C2 x C2 x C2 x C2 x C2 x C2 x C2 x C2 x C2 x C2"
            .parse()
            .unwrap();
        assert!(matches!(build_group(&e), Err(Error::OrderCap { .. })));
    }

    #[test]
    fn parse_error_lists_expected_tokens() {
        match "x".parse::<GroupExpr>() {
            Err(Error::Parse { expected, .. }) => assert!(expected.contains(&"Q8".to_string())),
            other => panic!("{other:?}"),
        }
    }
}
