//! Virtual link diagrams in Gauss-code form and virtual linking numbers.
//!
//! Text format: components separated by `;`, each `name: passage ...` with a
//! passage `O12+` or `U3-` (over/under, crossing id, sign; U+2212 is accepted
//! for the minus sign). Virtual crossings are not recorded.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Condition, Error, Result};
use crate::exact::rat_int;
use crate::linalg::RatMatrix;
use crate::seifert::{validate_couple, Ring, SeifertCouple};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    Over,
    Under,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Passage {
    pub id: u64,
    pub role: Role,
    /// +1 or -1.
    pub sign: i8,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Component {
    pub name: String,
    pub passages: Vec<Passage>,
}

/// A classical crossing: component indices of the over and under strands.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Crossing {
    pub over: usize,
    pub under: usize,
    pub sign: i8,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VirtualLinkDiagram {
    components: Vec<Component>,
}

fn diagram_error(detail: impl Into<String>) -> Error {
    Error::validation(Condition::Diagram, detail)
}

impl VirtualLinkDiagram {
    /// Checks that names are distinct and every crossing id occurs exactly
    /// twice, once over and once under, with equal signs.
    pub fn new(components: Vec<Component>) -> Result<VirtualLinkDiagram> {
        let mut names = BTreeSet::new();
        for c in &components {
            if c.name.is_empty() {
                return Err(diagram_error("empty component name"));
            }
            if !names.insert(c.name.as_str()) {
                return Err(diagram_error(format!("duplicate component name {}", c.name)));
            }
        }
        let mut seen: BTreeMap<u64, (Option<i8>, Option<i8>)> = BTreeMap::new();
        for c in &components {
            for p in &c.passages {
                if p.sign != 1 && p.sign != -1 {
                    return Err(diagram_error(format!("crossing {} has sign {}", p.id, p.sign)));
                }
                let slot = seen.entry(p.id).or_default();
                let target = match p.role {
                    Role::Over => &mut slot.0,
                    Role::Under => &mut slot.1,
                };
                if target.is_some() {
                    let role = if p.role == Role::Over { "O" } else { "U" };
                    return Err(diagram_error(format!("crossing {} has two {role} passages", p.id)));
                }
                *target = Some(p.sign);
            }
        }
        for (id, slot) in &seen {
            match slot {
                (Some(a), Some(b)) if a != b => {
                    return Err(diagram_error(format!("crossing {id} has signs {a:+} and {b:+}")));
                }
                (Some(_), Some(_)) => {}
                _ => return Err(diagram_error(format!("crossing {id} is dangling"))),
            }
        }
        Ok(VirtualLinkDiagram { components })
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.components.iter().position(|c| c.name == name)
    }

    pub fn crossings(&self) -> BTreeMap<u64, Crossing> {
        let mut over = BTreeMap::new();
        let mut under = BTreeMap::new();
        for (i, c) in self.components.iter().enumerate() {
            for p in &c.passages {
                match p.role {
                    Role::Over => over.insert(p.id, (i, p.sign)),
                    Role::Under => under.insert(p.id, (i, p.sign)),
                };
            }
        }
        over.into_iter()
            .map(|(id, (o, sign))| (id, Crossing { over: o, under: under[&id].0, sign }))
            .collect()
    }
}

impl fmt::Display for VirtualLinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self))
    }
}

/// Gauss-code text for a diagram; [`parse_gauss`] reads it back.
pub fn render(d: &VirtualLinkDiagram) -> String {
    d.components
        .iter()
        .map(|c| {
            let mut s = format!("{}:", c.name);
            for p in &c.passages {
                let role = if p.role == Role::Over { 'O' } else { 'U' };
                let sign = if p.sign > 0 { '+' } else { '-' };
                s.push_str(&format!(" {role}{}{sign}", p.id));
            }
            s
        })
        .collect::<Vec<_>>()
        .join(" ; ")
}

struct Cursor<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl Cursor<'_> {
    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }
}

/// Parse and validate a Gauss code.
pub fn parse_gauss(text: &str) -> Result<VirtualLinkDiagram> {
    let mut cur = Cursor {
        chars: text.chars().peekable(),
        line: 1,
        column: 1,
    };
    let mut components = Vec::new();
    loop {
        cur.skip_ws();
        if cur.peek().is_none() {
            if components.is_empty() {
                break;
            }
            return Err(cur.error("expected a component after ';'"));
        }
        let mut name = String::new();
        while let Some(c) = cur.peek() {
            if c == ':' || c == ';' || c.is_whitespace() {
                break;
            }
            name.push(c);
            cur.bump();
        }
        if name.is_empty() {
            return Err(cur.error("expected a component name"));
        }
        cur.skip_ws();
        if cur.peek() != Some(':') {
            return Err(cur.error(format!("expected ':' after component name {name}")));
        }
        cur.bump();
        let mut passages = Vec::new();
        loop {
            cur.skip_ws();
            let role = match cur.peek() {
                None | Some(';') => break,
                Some('O') => Role::Over,
                Some('U') => Role::Under,
                Some(c) => return Err(cur.error(format!("expected O or U, found {c:?}"))),
            };
            cur.bump();
            let mut digits = String::new();
            while let Some(c) = cur.peek().filter(char::is_ascii_digit) {
                digits.push(c);
                cur.bump();
            }
            let id: u64 = digits.parse().map_err(|_| cur.error("expected a crossing id"))?;
            let sign = match cur.peek() {
                Some('+') => 1,
                Some('-') | Some('\u{2212}') => -1,
                _ => return Err(cur.error(format!("expected a sign after crossing {id}"))),
            };
            cur.bump();
            passages.push(Passage { id, role, sign });
        }
        components.push(Component { name, passages });
        if cur.bump().is_none() {
            break;
        }
    }
    VirtualLinkDiagram::new(components)
}

/// Sum of the signs of crossings where `j` passes over `k`.
pub fn vlk(d: &VirtualLinkDiagram, j: &str, k: &str) -> Result<i64> {
    if j == k {
        return Err(Error::invalid(format!("vlk of {j} with itself")));
    }
    let jc = d.index_of(j).ok_or_else(|| Error::invalid(format!("unknown component {j}")))?;
    let kc = d.index_of(k).ok_or_else(|| Error::invalid(format!("unknown component {k}")))?;
    let unders: BTreeSet<u64> = d.components[kc]
        .passages
        .iter()
        .filter(|p| p.role == Role::Under)
        .map(|p| p.id)
        .collect();
    Ok(d.components[jc]
        .passages
        .iter()
        .filter(|p| p.role == Role::Over && unders.contains(&p.id))
        .map(|p| i64::from(p.sign))
        .sum())
}

/// Cores of a genus-g curve system with their (+, -) push-offs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveSystem {
    pub diagram: VirtualLinkDiagram,
    pub cores: Vec<String>,
    pub push_offs: Vec<(String, String)>,
}

impl CurveSystem {
    pub fn new(diagram: VirtualLinkDiagram, cores: Vec<String>, push_offs: Vec<(String, String)>) -> Result<CurveSystem> {
        if cores.len() != push_offs.len() {
            return Err(diagram_error("every core needs one pair of push-offs"));
        }
        let mut names = BTreeSet::new();
        for n in cores.iter().chain(push_offs.iter().flat_map(|(a, b)| [a, b])) {
            if diagram.index_of(n).is_none() {
                return Err(diagram_error(format!("curve {n} is not a component of the diagram")));
            }
            if !names.insert(n.as_str()) {
                return Err(diagram_error(format!("curve {n} is used twice")));
            }
        }
        Ok(CurveSystem {
            diagram,
            cores,
            push_offs,
        })
    }
}

/// A^±[i][j] = vlk(push-off^±(core i), core j), validated as an integral couple.
pub fn assemble_couple(cs: &CurveSystem) -> Result<SeifertCouple> {
    let n = cs.cores.len();
    let mut plus = RatMatrix::zeros(n, n);
    let mut minus = RatMatrix::zeros(n, n);
    for (i, (pp, pm)) in cs.push_offs.iter().enumerate() {
        for (j, core) in cs.cores.iter().enumerate() {
            plus.set(i, j, rat_int(vlk(&cs.diagram, pp, core)?));
            minus.set(i, j, rat_int(vlk(&cs.diagram, pm, core)?));
        }
    }
    validate_couple(plus, minus, Ring::Z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_examples() {
        let d = parse_gauss("J: O1+ ; K: U1+").unwrap();
        assert_eq!(d.components().len(), 2);
        assert_eq!(d.crossings().len(), 1);
        let kink = parse_gauss("J: O1+ U1+").unwrap();
        assert_eq!(kink.components().len(), 1);
        let e = parse_gauss("J: O1+ ; K: O1+").unwrap_err();
        assert!(matches!(e, Error::Validation { condition: Condition::Diagram, .. }));
        assert!(parse_gauss("J: O1+ ; K: U1-").is_err());
        assert!(parse_gauss("J: O1+").is_err());
        assert!(parse_gauss("J: O1+ ; J: U1+").is_err());
        let d = parse_gauss("J: O1\u{2212} ;\n K: U1\u{2212}").unwrap();
        assert_eq!(d.crossings()[&1].sign, -1);
        assert_eq!(parse_gauss("").unwrap().components().len(), 0);
    }

    #[test]
    fn parse_errors_have_positions() {
        match parse_gauss("J: O1+ ;\nK U1+") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 3)),
            other => panic!("unexpected {other:?}"),
        }
        match parse_gauss("J: X1+") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (1, 4)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_gauss("J: O+"), Err(Error::Parse { .. })));
        assert!(matches!(parse_gauss("J: O1"), Err(Error::Parse { .. })));
        assert!(matches!(parse_gauss("J: ;"), Err(Error::Parse { .. })));
    }

    #[test]
    fn vlk_examples() {
        let hopf = parse_gauss("J: O1+ ; K: U1+").unwrap();
        assert_eq!(vlk(&hopf, "J", "K").unwrap(), 1);
        assert_eq!(vlk(&hopf, "K", "J").unwrap(), 0);
        let classical = parse_gauss("J: O1+ U2+ ; K: U1+ O2+").unwrap();
        assert_eq!(vlk(&classical, "J", "K").unwrap(), 1);
        assert_eq!(vlk(&classical, "K", "J").unwrap(), 1);
        let split = parse_gauss("J: O1+ U1+ ; K:").unwrap();
        assert_eq!(vlk(&split, "J", "K").unwrap(), 0);
        assert!(vlk(&split, "J", "J").is_err());
        assert!(vlk(&split, "J", "L").is_err());
    }

    /// Push-offs a±, b± of cores a, b with A+ = [[1,1],[0,1]], A- = [[1,0],[1,1]].
    fn genus_one(flip: bool) -> CurveSystem {
        let s = if flip { '-' } else { '+' };
        let text = format!(
            "a: U1+ U3+ U5+ U7{s} ; b: U2+ U4+ U8+ ; \
             ap: O1+ O2+ ; am: O5+ ; bp: O4+ ; bm: O7{s} O8+ ; \
             x: O3+"
        );
        let d = parse_gauss(&text).unwrap();
        let cores = vec!["a".to_string(), "b".to_string()];
        let push = vec![("ap".to_string(), "am".to_string()), ("bp".to_string(), "bm".to_string())];
        CurveSystem::new(d, cores, push).unwrap()
    }

    #[test]
    fn assemble_examples() {
        let c = assemble_couple(&genus_one(false)).unwrap();
        assert_eq!(c.a_plus(), &RatMatrix::from_i64(&[&[1, 1], &[0, 1]]));
        assert_eq!(c.a_minus(), &RatMatrix::from_i64(&[&[1, 0], &[1, 1]]));
        let e = assemble_couple(&genus_one(true)).unwrap_err();
        assert!(matches!(e, Error::Validation { condition: Condition::SkewSymmetry, .. }));
        let empty = CurveSystem::new(parse_gauss("").unwrap(), vec![], vec![]).unwrap();
        assert_eq!(assemble_couple(&empty).unwrap().dim(), 0);
        // doubling the off-diagonal linking keeps A- - A+ skew but gives det 4
        let d = parse_gauss("a: U1+ U5+ U7+ U9+ ; b: U2+ U3+ U4+ U8+ ; ap: O1+ O2+ O3+ ; am: O5+ ; bp: O4+ ; bm: O7+ O9+ O8+").unwrap();
        let cs = CurveSystem::new(
            d,
            vec!["a".into(), "b".into()],
            vec![("ap".into(), "am".into()), ("bp".into(), "bm".into())],
        )
        .unwrap();
        let e = assemble_couple(&cs).unwrap_err();
        assert!(matches!(e, Error::Validation { condition: Condition::Determinant, .. }));
        let bad = CurveSystem::new(parse_gauss("a: ; b:").unwrap(), vec!["a".into()], vec![("b".into(), "c".into())]);
        assert!(bad.is_err());
    }

    fn arb_diagram() -> impl Strategy<Value = VirtualLinkDiagram> {
        (1usize..=4, proptest::collection::vec((0usize..4, 0usize..4, any::<bool>(), 0usize..8, 0usize..8), 0..10)).prop_map(
            |(n, crossings)| {
                let mut comps: Vec<Component> = (0..n)
                    .map(|i| Component {
                        name: format!("C{i}"),
                        passages: Vec::new(),
                    })
                    .collect();
                for (id, (o, u, pos, io, iu)) in crossings.into_iter().enumerate() {
                    let sign = if pos { 1 } else { -1 };
                    let (o, u) = (o % n, u % n);
                    let at = io.min(comps[o].passages.len());
                    comps[o].passages.insert(at, Passage { id: id as u64 + 1, role: Role::Over, sign });
                    let at = iu.min(comps[u].passages.len());
                    comps[u].passages.insert(at, Passage { id: id as u64 + 1, role: Role::Under, sign });
                }
                VirtualLinkDiagram::new(comps).unwrap()
            },
        )
    }

    proptest! {
        #[test]
        fn render_round_trip(d in arb_diagram()) {
            prop_assert_eq!(parse_gauss(&render(&d)).unwrap(), d);
        }

        #[test]
        fn vlk_asymmetry_matches_crossing_table(d in arb_diagram()) {
            let n = d.components().len();
            let table = d.crossings();
            for j in 0..n {
                for k in 0..n {
                    if j == k {
                        continue;
                    }
                    let expected: i64 = table
                        .values()
                        .map(|c| {
                            let s = i64::from(c.sign);
                            if c.over == j && c.under == k {
                                s
                            } else if c.over == k && c.under == j {
                                -s
                            } else {
                                0
                            }
                        })
                        .sum();
                    let (nj, nk) = (&d.components()[j].name, &d.components()[k].name);
                    prop_assert_eq!(vlk(&d, nj, nk).unwrap() - vlk(&d, nk, nj).unwrap(), expected);
                }
            }
        }
    }
}
