//! The group-spec text format.
//!
//! ```text
//! SPEC     := TERM { "x" TERM }               (left-associative direct product)
//! TERM     := "A"n | "S"n | "C"n | "D"n | "Q8"
//!           | "PSL(2," q ")" | "SL(2," q ")"
//!           | "perm:" "[" [ CYCLES { "," CYCLES } ] "]"
//! CYCLES   := "(" points ")" { "(" points ")" }  (1-based points)
//! ```
//!
//! Whitespace between tokens is ignored. Inside a cycle, points are separated
//! by whitespace or commas.

use std::fmt;

use num_integer::Integer;

use super::perm::Permutation;
use crate::error::{Error, Result};
use crate::field::prime_power;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Alternating(usize),
    Symmetric(usize),
    Cyclic(usize),
    /// Dihedral group of order `2n`.
    Dihedral(usize),
    Quaternion,
    Psl2(u32),
    Sl2(u32),
    Explicit { degree: usize, generators: Vec<Permutation> },
    /// Direct product of two or more non-product factors.
    Product(Vec<GroupSpec>),
}

impl GroupSpec {
    pub fn parse(text: &str) -> Result<Self> {
        parse_spec(text)
    }

    /// Direct product, flattening nested products.
    pub fn product(factors: impl IntoIterator<Item = GroupSpec>) -> GroupSpec {
        let mut flat = Vec::new();
        for f in factors {
            match f {
                GroupSpec::Product(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        if flat.len() == 1 {
            flat.pop().unwrap()
        } else {
            GroupSpec::Product(flat)
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            GroupSpec::Alternating(n) | GroupSpec::Symmetric(n) | GroupSpec::Cyclic(n) if *n < 1 => {
                Err(Error::InvalidSpec("family parameter must be ≥ 1".into()))
            }
            GroupSpec::Dihedral(n) if *n < 3 => {
                Err(Error::InvalidSpec("dihedral parameter must be ≥ 3".into()))
            }
            GroupSpec::Psl2(q) | GroupSpec::Sl2(q) if prime_power(*q as u64).is_none() => {
                Err(Error::InvalidSpec(format!("{q} is not a prime power")))
            }
            GroupSpec::Explicit { degree, generators } => {
                if generators.iter().any(|g| g.degree() != *degree) {
                    return Err(Error::InvalidSpec("generator degrees differ".into()));
                }
                Ok(())
            }
            GroupSpec::Product(factors) => {
                if factors.len() < 2 {
                    return Err(Error::InvalidSpec("a product needs at least two factors".into()));
                }
                factors.iter().try_for_each(GroupSpec::validate)
            }
            _ => Ok(()),
        }
    }

    /// The classical order of the group, when known without enumeration.
    pub fn predicted_order(&self) -> Option<u128> {
        let fact = |n: usize| (1..=n as u128).try_fold(1u128, |acc, k| acc.checked_mul(k));
        match self {
            GroupSpec::Alternating(n) => fact(*n).map(|f| if *n >= 2 { f / 2 } else { f }),
            GroupSpec::Symmetric(n) => fact(*n),
            GroupSpec::Cyclic(n) => Some(*n as u128),
            GroupSpec::Dihedral(n) => Some(2 * *n as u128),
            GroupSpec::Quaternion => Some(8),
            GroupSpec::Sl2(q) => {
                let q = *q as u128;
                Some(q * (q * q - 1))
            }
            GroupSpec::Psl2(q) => {
                let q = *q as u128;
                Some(q * (q * q - 1) / (q - 1).gcd(&2))
            }
            GroupSpec::Explicit { generators, .. } if generators.is_empty() => Some(1),
            GroupSpec::Explicit { .. } => None,
            GroupSpec::Product(factors) => factors
                .iter()
                .try_fold(1u128, |acc, f| f.predicted_order().and_then(|o| acc.checked_mul(o))),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Alternating(n) => write!(f, "A{n}"),
            GroupSpec::Symmetric(n) => write!(f, "S{n}"),
            GroupSpec::Cyclic(n) => write!(f, "C{n}"),
            GroupSpec::Dihedral(n) => write!(f, "D{n}"),
            GroupSpec::Quaternion => write!(f, "Q8"),
            GroupSpec::Psl2(q) => write!(f, "PSL(2,{q})"),
            GroupSpec::Sl2(q) => write!(f, "SL(2,{q})"),
            GroupSpec::Explicit { generators, .. } => {
                let gens: Vec<String> = generators.iter().map(|g| g.to_string()).collect();
                write!(f, "perm:[{}]", gens.join(","))
            }
            GroupSpec::Product(factors) => {
                let parts: Vec<String> = factors.iter().map(|g| g.to_string()).collect();
                write!(f, "{}", parts.join(" x "))
            }
        }
    }
}

impl std::str::FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_spec(s)
    }
}

pub fn parse_spec(text: &str) -> Result<GroupSpec> {
    let mut p = Parser { chars: text.chars().collect(), pos: 0 };
    let spec = p.spec()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(Error::parse(p.pos, format!("unexpected '{}'", p.chars[p.pos])));
    }
    Ok(spec)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            let found = self.chars.get(self.pos).map_or("end of input".to_string(), |c| format!("'{c}'"));
            Err(Error::parse(self.pos, format!("expected '{c}', found {found}")))
        }
    }

    fn keyword(&mut self, word: &str) -> bool {
        self.skip_ws();
        let w: Vec<char> = word.chars().collect();
        if self.chars[self.pos..].starts_with(&w) {
            self.pos += w.len();
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<(usize, usize)> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse(start, "expected a number"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        let n = digits.parse().map_err(|_| Error::parse(start, "number too large"))?;
        Ok((n, start))
    }

    fn spec(&mut self) -> Result<GroupSpec> {
        let mut factors = vec![self.term()?];
        while matches!(self.peek(), Some('x') | Some('×')) {
            self.pos += 1;
            factors.push(self.term()?);
        }
        Ok(GroupSpec::product(factors))
    }

    fn term(&mut self) -> Result<GroupSpec> {
        let start = match self.peek() {
            Some(_) => self.pos,
            None => return Err(Error::parse(self.pos, "expected a group")),
        };
        if self.keyword("perm") {
            self.expect(':')?;
            return self.explicit();
        }
        if self.keyword("PSL") {
            let q = self.linear_param()?;
            return checked(GroupSpec::Psl2(q), start);
        }
        if self.keyword("SL") {
            let q = self.linear_param()?;
            return checked(GroupSpec::Sl2(q), start);
        }
        if self.keyword("Q8") {
            return Ok(GroupSpec::Quaternion);
        }
        let family = self.chars[self.pos];
        let make: fn(usize) -> GroupSpec = match family {
            'A' => GroupSpec::Alternating,
            'S' => GroupSpec::Symmetric,
            'C' => GroupSpec::Cyclic,
            'D' => GroupSpec::Dihedral,
            other => return Err(Error::parse(self.pos, format!("unknown group family '{other}'"))),
        };
        self.pos += 1;
        let (n, _) = self.number()?;
        checked(make(n), start)
    }

    fn linear_param(&mut self) -> Result<u32> {
        self.expect('(')?;
        let (dim, at) = self.number()?;
        if dim != 2 {
            return Err(Error::parse(at, "only 2×2 linear groups are supported"));
        }
        self.expect(',')?;
        let (q, at) = self.number()?;
        self.expect(')')?;
        u32::try_from(q).map_err(|_| Error::parse(at, "field order too large"))
    }

    fn explicit(&mut self) -> Result<GroupSpec> {
        self.expect('[')?;
        let mut raw: Vec<Vec<Vec<usize>>> = Vec::new();
        if !self.eat(']') {
            loop {
                raw.push(self.cycle_list()?);
                if self.eat(']') {
                    break;
                }
                self.expect(',')?;
            }
        }
        let degree = raw.iter().flatten().flatten().map(|&p| p + 1).max().unwrap_or(1);
        let generators = raw
            .iter()
            .map(|cycles| Permutation::from_cycles(degree, cycles))
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupSpec::Explicit { degree, generators })
    }

    fn cycle_list(&mut self) -> Result<Vec<Vec<usize>>> {
        let mut cycles = Vec::new();
        if self.peek() != Some('(') {
            return Err(Error::parse(self.pos, "expected '(' to start a cycle"));
        }
        while self.eat('(') {
            let mut cycle = Vec::new();
            while !self.eat(')') {
                if !cycle.is_empty() {
                    self.eat(',');
                }
                let (pt, at) = self.number()?;
                if pt == 0 {
                    return Err(Error::parse(at, "points are numbered from 1"));
                }
                cycle.push(pt - 1);
            }
            cycles.push(cycle);
        }
        Ok(cycles)
    }
}

fn checked(spec: GroupSpec, pos: usize) -> Result<GroupSpec> {
    spec.validate().map_err(|e| match e {
        Error::InvalidSpec(msg) => Error::parse(pos, msg),
        other => other,
    })?;
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn named_families() {
        assert_eq!(parse_spec("A5").unwrap(), GroupSpec::Alternating(5));
        assert_eq!(parse_spec(" PSL( 2 , 7 ) ").unwrap(), GroupSpec::Psl2(7));
        assert_eq!(parse_spec("SL(2,9)").unwrap(), GroupSpec::Sl2(9));
        assert_eq!(parse_spec("Q8").unwrap(), GroupSpec::Quaternion);
        assert_eq!(parse_spec("D12").unwrap(), GroupSpec::Dihedral(12));
    }

    #[test]
    fn products_flatten_left_to_right() {
        assert_eq!(
            parse_spec("A5 x C7").unwrap(),
            GroupSpec::Product(vec![GroupSpec::Alternating(5), GroupSpec::Cyclic(7)])
        );
        assert_eq!(
            parse_spec("C2xC2xC2").unwrap(),
            GroupSpec::Product(vec![GroupSpec::Cyclic(2); 3])
        );
    }

    #[test]
    fn explicit_generators() {
        let spec = parse_spec("perm:[(1 2 3),(1 2)]").unwrap();
        let GroupSpec::Explicit { degree, generators } = &spec else { panic!() };
        assert_eq!(*degree, 3);
        assert_eq!(generators[0].to_string(), "(1 2 3)");
        assert_eq!(generators[1].to_string(), "(1 2)");
        let spec = parse_spec("perm:[(1,2)(3,4), (1 3)]").unwrap();
        let GroupSpec::Explicit { degree, generators } = &spec else { panic!() };
        assert_eq!(*degree, 4);
        assert_eq!(generators[0].to_string(), "(1 2)(3 4)");
        assert_eq!(parse_spec("perm:[]").unwrap().predicted_order(), Some(1));
    }

    #[test]
    fn errors_carry_messages_and_positions() {
        match parse_spec("PSL(2,6)").unwrap_err() {
            Error::Parse { pos, msg } => {
                assert_eq!(pos, 0);
                assert_eq!(msg, "6 is not a prime power");
            }
            e => panic!("{e:?}"),
        }
        match parse_spec("D2").unwrap_err() {
            Error::Parse { msg, .. } => assert_eq!(msg, "dihedral parameter must be ≥ 3"),
            e => panic!("{e:?}"),
        }
        match parse_spec("A5 x Z3").unwrap_err() {
            Error::Parse { pos, .. } => assert_eq!(pos, 5),
            e => panic!("{e:?}"),
        }
        assert!(parse_spec("").is_err());
        assert!(parse_spec("A").is_err());
        assert!(parse_spec("A0").is_err());
        assert!(parse_spec("A5 x").is_err());
        assert!(parse_spec("perm:[(1 2)").is_err());
        assert!(parse_spec("perm:[(0 1)]").is_err());
        assert!(parse_spec("perm:[(1 2)(2 3)]").is_err());
        assert!(parse_spec("SL(3,5)").is_err());
        assert!(parse_spec("A5 A6").is_err());
    }

    #[test]
    fn predicted_orders() {
        let order = |s: &str| parse_spec(s).unwrap().predicted_order().unwrap();
        assert_eq!(order("A5"), 60);
        assert_eq!(order("S7"), 5040);
        assert_eq!(order("D6"), 12);
        assert_eq!(order("PSL(2,7)"), 168);
        assert_eq!(order("PSL(2,8)"), 504);
        assert_eq!(order("SL(2,13)"), 2184);
        assert_eq!(order("A5 x C7"), 420);
        assert_eq!(order("A1"), 1);
    }

    fn leaf() -> impl Strategy<Value = GroupSpec> {
        prop_oneof![
            (1usize..12).prop_map(GroupSpec::Alternating),
            (1usize..12).prop_map(GroupSpec::Symmetric),
            (1usize..40).prop_map(GroupSpec::Cyclic),
            (3usize..40).prop_map(GroupSpec::Dihedral),
            Just(GroupSpec::Quaternion),
            prop::sample::select(vec![2u32, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27]).prop_map(GroupSpec::Psl2),
            prop::sample::select(vec![2u32, 3, 4, 5, 7, 8, 9]).prop_map(GroupSpec::Sl2),
            (2usize..7).prop_flat_map(|deg| {
                let perm = Just((0..deg as u16).collect::<Vec<u16>>())
                    .prop_shuffle()
                    .prop_map(|images| Permutation::from_images(images).unwrap());
                prop::collection::vec(perm, 0..3).prop_map(move |mut generators| {
                    // keep the top point moved so the parsed degree matches
                    generators.push(Permutation::from_cycles(deg, &[vec![0, deg - 1]]).unwrap());
                    GroupSpec::Explicit { degree: deg, generators }
                })
            }),
        ]
    }

    proptest! {
        #[test]
        fn display_parse_round_trip(factors in prop::collection::vec(leaf(), 1..4)) {
            let spec = GroupSpec::product(factors);
            let text = spec.to_string();
            prop_assert_eq!(parse_spec(&text).unwrap(), spec);
        }
    }
}
