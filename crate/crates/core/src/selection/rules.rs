//! A closed, serializable grammar for partial selection functions.
//!
//! A rule of arity `r` sees the apex `x` and a tuple
//! `((y_1, n_1), ..., (y_r, n_r))`. Its guard decides whether the function is
//! defined on that input; its selector picks an index `i`, and the rule's
//! value is `n_i`. Rules never produce a value directly, so a rule cannot
//! return anything but one of its inputs.
//!
//! Text form, one rule per line: `rule <arity> <guard> <selector>`.
//!
//! * guard: `true`, `false`, `distinct`, or comparisons joined by `&`, e.g.
//!   `n1<n2 & y1.2>=x.1`. Terms are `n<i>` (report of member `i`),
//!   `y<i>.<j>` (coordinate `j` of member `i`), `x.<j>` (coordinate `j` of the
//!   apex) and integer literals; all indices are 1-based. `distinct` holds
//!   when all reports differ.
//! * selector: a 1-based index constant, `argmin`, `argmax` (ties to the
//!   lowest index) or `median` (the member holding the lower-median report,
//!   ties broken by index).

use std::borrow::Cow;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::error::RuleError;
use crate::lattice::{Universe, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Term {
    /// `n_i`, zero-based internally.
    Report(usize),
    /// Coordinate `j` of `y_i`, both zero-based internally.
    MemberCoord(usize, usize),
    /// Coordinate `j` of the apex, zero-based internally.
    ApexCoord(usize),
    Const(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Cmp {
    Lt,
    Le,
    Eq,
    Ne,
    Gt,
    Ge,
}

impl Cmp {
    const TOKENS: [(&'static str, Cmp); 7] = [
        ("<=", Cmp::Le),
        (">=", Cmp::Ge),
        ("!=", Cmp::Ne),
        ("==", Cmp::Eq),
        ("<", Cmp::Lt),
        (">", Cmp::Gt),
        ("=", Cmp::Eq),
    ];

    fn holds(self, a: u32, b: u32) -> bool {
        match self {
            Cmp::Lt => a < b,
            Cmp::Le => a <= b,
            Cmp::Eq => a == b,
            Cmp::Ne => a != b,
            Cmp::Gt => a > b,
            Cmp::Ge => a >= b,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Cmp::Lt => "<",
            Cmp::Le => "<=",
            Cmp::Eq => "=",
            Cmp::Ne => "!=",
            Cmp::Gt => ">",
            Cmp::Ge => ">=",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Atom {
    False,
    Distinct,
    Compare(Term, Cmp, Term),
}

/// A conjunction of atoms; the empty conjunction always fires.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Guard {
    atoms: Vec<Atom>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Selector {
    /// Zero-based internally.
    Index(usize),
    ArgMin,
    ArgMax,
    Median,
}

/// One member of a committee: a neighbor and its (lower) label.
pub type Member<'a> = (&'a Vertex, u32);

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SelectionRule {
    arity: usize,
    guard: Guard,
    selector: Selector,
}

/// Where the edge set used for selection labeling comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ThetaSource {
    /// All max-decreasing pairs within `D`.
    Maximal,
    /// The universe's own edges.
    File,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelectionRuleSet {
    rules: Vec<SelectionRule>,
    arity_cap: usize,
    theta: ThetaSource,
}

pub const DEFAULT_ARITY_CAP: usize = 3;

pub const PRESET_NAMES: [&str; 5] = ["first", "min-report", "max-report", "committee", "never"];

fn term_value(term: Term, x: &Vertex, members: &[Member<'_>]) -> u32 {
    match term {
        Term::Report(i) => members[i].1,
        Term::MemberCoord(i, j) => members[i].0.coords()[j],
        Term::ApexCoord(j) => x.coords()[j],
        Term::Const(c) => c,
    }
}

impl Guard {
    pub fn always() -> Self {
        Guard::default()
    }

    pub fn never() -> Self {
        Guard {
            atoms: vec![Atom::False],
        }
    }

    pub fn all(atoms: Vec<Atom>) -> Self {
        Guard { atoms }
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn is_never(&self) -> bool {
        self.atoms.contains(&Atom::False)
    }

    /// Whether the guard looks at member coordinates (as opposed to only the
    /// reports and the apex).
    pub fn reads_member_coords(&self) -> bool {
        self.atoms.iter().any(|a| match a {
            Atom::Compare(l, _, r) => {
                matches!(l, Term::MemberCoord(..)) || matches!(r, Term::MemberCoord(..))
            }
            _ => false,
        })
    }

    pub fn fires(&self, x: &Vertex, members: &[Member<'_>]) -> bool {
        self.atoms.iter().all(|atom| match atom {
            Atom::False => false,
            Atom::Distinct => members.iter().map(|m| m.1).all_unique(),
            Atom::Compare(l, op, r) => {
                op.holds(term_value(*l, x, members), term_value(*r, x, members))
            }
        })
    }

    fn terms(&self) -> impl Iterator<Item = Term> + '_ {
        self.atoms.iter().flat_map(|a| match a {
            Atom::Compare(l, _, r) => vec![*l, *r],
            _ => Vec::new(),
        })
    }
}

impl Selector {
    /// Zero-based index of the selected member.
    pub fn pick(self, members: &[Member<'_>]) -> usize {
        match self {
            Selector::Index(i) => i,
            Selector::ArgMin => members
                .iter()
                .enumerate()
                .min_by_key(|(i, m)| (m.1, *i))
                .map_or(0, |(i, _)| i),
            Selector::ArgMax => members
                .iter()
                .enumerate()
                .max_by_key(|(i, m)| (m.1, std::cmp::Reverse(*i)))
                .map_or(0, |(i, _)| i),
            Selector::Median => {
                let order: Vec<usize> = (0..members.len())
                    .sorted_by_key(|&i| (members[i].1, i))
                    .collect();
                order[(order.len() - 1) / 2]
            }
        }
    }
}

impl SelectionRule {
    pub fn new(arity: usize, guard: Guard, selector: Selector) -> Result<Self, RuleError> {
        if arity == 0 {
            return Err(RuleError::ZeroArity);
        }
        let check = |i: usize| {
            if i >= arity {
                Err(RuleError::IndexOutOfRange {
                    index: i + 1,
                    arity,
                })
            } else {
                Ok(())
            }
        };
        if let Selector::Index(i) = selector {
            check(i)?;
        }
        for term in guard.terms() {
            match term {
                Term::Report(i) | Term::MemberCoord(i, _) => check(i)?,
                _ => {}
            }
        }
        Ok(SelectionRule {
            arity,
            guard,
            selector,
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn guard(&self) -> &Guard {
        &self.guard
    }

    pub fn selector(&self) -> Selector {
        self.selector
    }

    /// Evaluates the partial function: `Some(n_i)` when the guard fires,
    /// `None` when the function is undefined on this input.
    pub fn apply(&self, x: &Vertex, members: &[Member<'_>]) -> Option<u32> {
        debug_assert_eq!(members.len(), self.arity);
        if !self.guard.fires(x, members) {
            return None;
        }
        Some(members[self.selector.pick(members)].1)
    }

    fn max_coordinate(&self) -> Option<usize> {
        self.guard
            .terms()
            .filter_map(|t| match t {
                Term::MemberCoord(_, j) | Term::ApexCoord(j) => Some(j),
                _ => None,
            })
            .max()
    }
}

impl SelectionRuleSet {
    pub fn new(
        rules: Vec<SelectionRule>,
        arity_cap: usize,
        theta: ThetaSource,
    ) -> Result<Self, RuleError> {
        if arity_cap == 0 {
            return Err(RuleError::ZeroArityCap);
        }
        if let Some(r) = rules.iter().find(|r| r.arity > arity_cap) {
            return Err(RuleError::ArityAboveCap {
                arity: r.arity,
                cap: arity_cap,
            });
        }
        Ok(SelectionRuleSet {
            rules,
            arity_cap,
            theta,
        })
    }

    pub fn rules(&self) -> &[SelectionRule] {
        &self.rules
    }

    pub fn arity_cap(&self) -> usize {
        self.arity_cap
    }

    pub fn theta(&self) -> ThetaSource {
        self.theta
    }

    pub fn with_theta(mut self, theta: ThetaSource) -> Self {
        self.theta = theta;
        self
    }

    /// Rejects rules that read coordinates beyond dimension `k`.
    pub fn check_dimension(&self, k: usize) -> Result<(), RuleError> {
        match self
            .rules
            .iter()
            .filter_map(SelectionRule::max_coordinate)
            .max()
        {
            Some(j) if j >= k => Err(RuleError::CoordinateOutOfRange { coord: j + 1, k }),
            _ => Ok(()),
        }
    }

    /// The universe whose edges the rules are evaluated on.
    pub fn effective_universe<'u>(&self, universe: &'u Universe) -> Cow<'u, Universe> {
        match self.theta {
            ThetaSource::Maximal if !universe.is_maximal_theta() => {
                Cow::Owned(universe.with_maximal_theta())
            }
            _ => Cow::Borrowed(universe),
        }
    }

    /// A named preset. Presets evaluate on the universe's own edges.
    ///
    /// * `first`: select member 1, every arity up to the cap.
    /// * `min-report` / `max-report`: select the least / greatest report,
    ///   every arity up to the cap.
    /// * `committee`: arity = cap, fires iff all reports differ, selects the
    ///   median report.
    /// * `never`: undefined everywhere.
    pub fn preset(name: &str, arity_cap: usize) -> Result<Self, RuleError> {
        if arity_cap == 0 {
            return Err(RuleError::ZeroArityCap);
        }
        let every_arity = |selector: Selector| {
            (1..=arity_cap)
                .map(|r| SelectionRule::new(r, Guard::always(), selector))
                .collect::<Result<Vec<_>, _>>()
        };
        let rules = match name {
            "first" => every_arity(Selector::Index(0))?,
            "min-report" => every_arity(Selector::ArgMin)?,
            "max-report" => every_arity(Selector::ArgMax)?,
            "committee" => vec![SelectionRule::new(
                arity_cap,
                Guard::all(vec![Atom::Distinct]),
                Selector::Median,
            )?],
            "never" => vec![SelectionRule::new(1, Guard::never(), Selector::Index(0))?],
            other => return Err(RuleError::UnknownPreset(other.to_string())),
        };
        SelectionRuleSet::new(rules, arity_cap, ThetaSource::File)
    }
}

/// Every preset at the given arity cap, in a fixed order.
pub fn builtin_rule_library(arity_cap: usize) -> Vec<(&'static str, SelectionRuleSet)> {
    PRESET_NAMES
        .iter()
        .map(|&name| {
            (
                name,
                SelectionRuleSet::preset(name, arity_cap).expect("presets are well formed"),
            )
        })
        .collect()
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Report(i) => write!(f, "n{}", i + 1),
            Term::MemberCoord(i, j) => write!(f, "y{}.{}", i + 1, j + 1),
            Term::ApexCoord(j) => write!(f, "x.{}", j + 1),
            Term::Const(c) => write!(f, "{c}"),
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::False => f.write_str("false"),
            Atom::Distinct => f.write_str("distinct"),
            Atom::Compare(l, op, r) => write!(f, "{l}{}{r}", op.symbol()),
        }
    }
}

impl fmt::Display for Guard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.atoms.is_empty() {
            f.write_str("true")
        } else {
            write!(f, "{}", self.atoms.iter().join("&"))
        }
    }
}

impl fmt::Display for Selector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Selector::Index(i) => write!(f, "{}", i + 1),
            Selector::ArgMin => f.write_str("argmin"),
            Selector::ArgMax => f.write_str("argmax"),
            Selector::Median => f.write_str("median"),
        }
    }
}

impl fmt::Display for SelectionRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rule {} {} {}", self.arity, self.guard, self.selector)
    }
}

impl fmt::Display for ThetaSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ThetaSource::Maximal => "maximal",
            ThetaSource::File => "file",
        })
    }
}

/// Canonical rule-set file text.
impl fmt::Display for SelectionRuleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "arity_cap {}", self.arity_cap)?;
        writeln!(f, "theta {}", self.theta)?;
        for rule in &self.rules {
            writeln!(f, "{rule}")?;
        }
        Ok(())
    }
}

fn parse_index(digits: &str, what: &str) -> Result<usize, RuleError> {
    match digits.parse::<usize>() {
        Ok(i) if i >= 1 => Ok(i - 1),
        _ => Err(RuleError::Syntax(format!("bad {what} index `{digits}`"))),
    }
}

impl FromStr for Term {
    type Err = RuleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some(rest) = s.strip_prefix('n') {
            return Ok(Term::Report(parse_index(rest, "report")?));
        }
        if let Some(rest) = s.strip_prefix("x.") {
            return Ok(Term::ApexCoord(parse_index(rest, "coordinate")?));
        }
        if let Some(rest) = s.strip_prefix('y') {
            let (i, j) = rest
                .split_once('.')
                .ok_or_else(|| RuleError::Syntax(format!("expected y<i>.<j>, got `{s}`")))?;
            return Ok(Term::MemberCoord(
                parse_index(i, "member")?,
                parse_index(j, "coordinate")?,
            ));
        }
        s.parse::<u32>()
            .map(Term::Const)
            .map_err(|_| RuleError::Syntax(format!("unknown term `{s}`")))
    }
}

impl FromStr for Atom {
    type Err = RuleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "false" => return Ok(Atom::False),
            "distinct" => return Ok(Atom::Distinct),
            _ => {}
        }
        let (pos, token, op) = Cmp::TOKENS
            .iter()
            .filter_map(|&(tok, op)| s.find(tok).map(|p| (p, tok, op)))
            .min_by_key(|&(p, tok, _)| (p, std::cmp::Reverse(tok.len())))
            .ok_or_else(|| RuleError::Syntax(format!("no comparison in `{s}`")))?;
        let lhs = s[..pos].parse()?;
        let rhs = s[pos + token.len()..].parse()?;
        Ok(Atom::Compare(lhs, op, rhs))
    }
}

impl FromStr for Guard {
    type Err = RuleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(RuleError::Syntax("missing guard".into()));
        }
        let atoms = compact
            .split('&')
            .filter(|p| !p.is_empty() && *p != "true")
            .map(str::parse)
            .collect::<Result<_, _>>()?;
        Ok(Guard { atoms })
    }
}

impl FromStr for Selector {
    type Err = RuleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "argmin" => Ok(Selector::ArgMin),
            "argmax" => Ok(Selector::ArgMax),
            "median" => Ok(Selector::Median),
            digits => Ok(Selector::Index(parse_index(digits, "selector")?)),
        }
    }
}

impl FromStr for SelectionRule {
    type Err = RuleError;

    /// `rule <arity> <guard...> <selector>`; the guard may contain spaces.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let tokens: Vec<&str> = s.split_whitespace().collect();
        if tokens.len() < 4 || tokens[0] != "rule" {
            return Err(RuleError::Syntax(format!(
                "expected `rule <arity> <guard> <selector>`, got `{s}`"
            )));
        }
        let arity = tokens[1]
            .parse::<usize>()
            .map_err(|_| RuleError::Syntax(format!("bad arity `{}`", tokens[1])))?;
        let guard = tokens[2..tokens.len() - 1].join(" ").parse()?;
        let selector = tokens[tokens.len() - 1].parse()?;
        SelectionRule::new(arity, guard, selector)
    }
}

impl FromStr for SelectionRuleSet {
    type Err = crate::error::ParseError;

    /// Parses a rule-set file. Without an `arity_cap` header the cap is the
    /// largest rule arity (at least [`DEFAULT_ARITY_CAP`]); without a `theta`
    /// header the maximal edge set is used.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        use crate::error::ParseError;
        let mut cap = None;
        let mut theta = None;
        let mut rules = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line_no = n + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut tokens = line.split_whitespace();
            match tokens.next() {
                Some("arity_cap") => {
                    let value = tokens
                        .next()
                        .and_then(|t| t.parse::<usize>().ok())
                        .ok_or_else(|| ParseError::new(line_no, "arity_cap needs an integer"))?;
                    cap = Some(value);
                }
                Some("theta") => {
                    theta = Some(match tokens.next() {
                        Some("maximal") => ThetaSource::Maximal,
                        Some("file") => ThetaSource::File,
                        _ => return Err(ParseError::new(line_no, "theta must be maximal|file")),
                    });
                }
                Some("rule") => rules.push(
                    line.parse::<SelectionRule>()
                        .map_err(|e| ParseError::new(line_no, e.to_string()))?,
                ),
                Some(other) => {
                    return Err(ParseError::new(
                        line_no,
                        format!("unknown directive `{other}`"),
                    ))
                }
                None => {}
            }
        }
        let cap = cap.unwrap_or_else(|| {
            rules
                .iter()
                .map(SelectionRule::arity)
                .max()
                .unwrap_or(0)
                .max(DEFAULT_ARITY_CAP)
        });
        SelectionRuleSet::new(rules, cap, theta.unwrap_or(ThetaSource::Maximal))
            .map_err(|e| ParseError::new(0, e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v<const N: usize>(c: [u32; N]) -> Vertex {
        Vertex::from(c)
    }

    #[test]
    fn parse_and_print_rules() {
        let rule: SelectionRule = "rule 2 n1 < n2 & y2.1>=x.2 1".parse().unwrap();
        assert_eq!(rule.arity(), 2);
        assert_eq!(rule.to_string(), "rule 2 n1<n2&y2.1>=x.2 1");
        assert_eq!(rule.to_string().parse::<SelectionRule>().unwrap(), rule);
        assert!(rule.guard().reads_member_coords());

        let committee: SelectionRule = "rule 3 distinct median".parse().unwrap();
        assert_eq!(committee.selector(), Selector::Median);
        let never: SelectionRule = "rule 1 false 1".parse().unwrap();
        assert!(never.guard().is_never());
        let always: SelectionRule = "rule 1 true argmax".parse().unwrap();
        assert!(always.guard().atoms().is_empty());
    }

    #[test]
    fn malformed_rules_are_rejected() {
        assert!(matches!(
            "rule 2 n3<n1 1".parse::<SelectionRule>(),
            Err(RuleError::IndexOutOfRange { index: 3, arity: 2 })
        ));
        assert!(matches!(
            "rule 2 true 3".parse::<SelectionRule>(),
            Err(RuleError::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            "rule 0 true 1".parse::<SelectionRule>(),
            Err(RuleError::ZeroArity)
        ));
        assert!("rule 1 n1~2 1".parse::<SelectionRule>().is_err());
        assert!("rule 1 1".parse::<SelectionRule>().is_err());
        assert!("rule 1 true pick".parse::<SelectionRule>().is_err());
        assert!("rule 1 z1<2 1".parse::<SelectionRule>().is_err());
    }

    #[test]
    fn selectors_pick_expected_members() {
        let a = v([0, 0]);
        let m: Vec<Member<'_>> = vec![(&a, 7), (&a, 4), (&a, 9), (&a, 4)];
        assert_eq!(Selector::Index(2).pick(&m), 2);
        assert_eq!(Selector::ArgMin.pick(&m), 1);
        assert_eq!(Selector::ArgMax.pick(&m), 2);
        // sorted reports 4,4,7,9 -> lower median is the second 4 (index 3)
        assert_eq!(Selector::Median.pick(&m), 3);
        let m3: Vec<Member<'_>> = vec![(&a, 5), (&a, 1), (&a, 3)];
        assert_eq!(Selector::Median.pick(&m3), 2);
    }

    #[test]
    fn guard_evaluation() {
        let x = v([2, 9]);
        let y1 = v([1, 3]);
        let y2 = v([4, 0]);
        let g: Guard = "n1<n2 & y2.1>=x.1 & x.2=9".parse().unwrap();
        assert!(g.fires(&x, &[(&y1, 1), (&y2, 5)]));
        assert!(!g.fires(&x, &[(&y1, 6), (&y2, 5)]));
        let distinct: Guard = "distinct".parse().unwrap();
        assert!(distinct.fires(&x, &[(&y1, 1), (&y2, 5)]));
        assert!(!distinct.fires(&x, &[(&y1, 5), (&y2, 5)]));
    }

    #[test]
    fn rule_set_file_round_trip() {
        let text = "arity_cap 3\ntheta file\nrule 1 true 1\nrule 3 distinct median\n";
        let set: SelectionRuleSet = text.parse().unwrap();
        assert_eq!(set.to_string(), text);
        assert_eq!(set.theta(), ThetaSource::File);

        let defaulted: SelectionRuleSet = "# comment\nrule 2 n1<n2 1\n".parse().unwrap();
        assert_eq!(defaulted.theta(), ThetaSource::Maximal);
        assert_eq!(defaulted.arity_cap(), DEFAULT_ARITY_CAP);

        assert!("arity_cap 1\nrule 2 true 1\n"
            .parse::<SelectionRuleSet>()
            .is_err());
        assert!("theta sometimes\n".parse::<SelectionRuleSet>().is_err());
        assert!("bogus 1\n".parse::<SelectionRuleSet>().is_err());
    }

    #[test]
    fn dimension_check() {
        let set: SelectionRuleSet = "rule 1 y1.3>0 1\n".parse().unwrap();
        assert!(set.check_dimension(3).is_ok());
        assert_eq!(
            set.check_dimension(2),
            Err(RuleError::CoordinateOutOfRange { coord: 3, k: 2 })
        );
    }

    #[test]
    fn presets_exist() {
        let lib = builtin_rule_library(DEFAULT_ARITY_CAP);
        let names: Vec<&str> = lib.iter().map(|(n, _)| *n).collect();
        assert_eq!(names, PRESET_NAMES);
        for (_, set) in &lib {
            assert_eq!(set.theta(), ThetaSource::File);
            let reparsed: SelectionRuleSet = set.to_string().parse().unwrap();
            assert_eq!(&reparsed, set);
        }
        assert!(matches!(
            SelectionRuleSet::preset("random", 2),
            Err(RuleError::UnknownPreset(_))
        ));
    }
}
