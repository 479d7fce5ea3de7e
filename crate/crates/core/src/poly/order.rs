use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Monomial, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderKind {
    Lex,
    GradedLex,
}

/// A monomial order given by a kind and a ranking of variables.
///
/// Ranked variables compare above unranked ones; higher rank means a larger
/// variable. Unranked variables fall back to natural order, where a smaller
/// index is the larger variable (`x1 > x2 > ...`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermOrder {
    kind: OrderKind,
    ranks: BTreeMap<Var, u32>,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct VarKey(bool, u32);

impl TermOrder {
    /// Natural order `x1 > x2 > ...` with no explicit ranking.
    pub fn natural(kind: OrderKind) -> Self {
        TermOrder {
            kind,
            ranks: BTreeMap::new(),
        }
    }

    /// Order in which `descending[0]` is the largest variable.
    pub fn with_descending(kind: OrderKind, descending: &[Var]) -> Self {
        let n = descending.len() as u32;
        let ranks = descending
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, n - i as u32))
            .collect::<BTreeMap<_, _>>();
        assert_eq!(
            ranks.len(),
            descending.len(),
            "variable listed twice in term order"
        );
        TermOrder { kind, ranks }
    }

    pub fn lex(descending: &[Var]) -> Self {
        Self::with_descending(OrderKind::Lex, descending)
    }

    pub fn graded_lex(descending: &[Var]) -> Self {
        Self::with_descending(OrderKind::GradedLex, descending)
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    /// Explicitly ranked variables, largest first.
    pub fn descending_variables(&self) -> Vec<Var> {
        let mut vars: Vec<(u32, Var)> = self.ranks.iter().map(|(&v, &r)| (r, v)).collect();
        vars.sort_unstable_by(|a, b| b.cmp(a));
        vars.into_iter().map(|(_, v)| v).collect()
    }

    fn key(&self, v: Var) -> VarKey {
        match self.ranks.get(&v) {
            Some(&r) => VarKey(true, r),
            None => VarKey(false, u32::MAX - v),
        }
    }

    /// Compare two variables: `Greater` means `a` is the larger variable.
    pub fn cmp_vars(&self, a: Var, b: Var) -> Ordering {
        self.key(a).cmp(&self.key(b))
    }

    fn keyed(&self, m: &Monomial) -> Vec<(VarKey, u32)> {
        let mut out: Vec<(VarKey, u32)> = m.iter().map(|(v, e)| (self.key(v), e)).collect();
        out.sort_unstable_by_key(|&(key, _)| std::cmp::Reverse(key));
        out
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        if self.kind == OrderKind::GradedLex {
            match a.degree().cmp(&b.degree()) {
                Ordering::Equal => {}
                other => return other,
            }
        }
        let ka = self.keyed(a);
        let kb = self.keyed(b);
        for (x, y) in ka.iter().zip(kb.iter()) {
            match x.0.cmp(&y.0) {
                Ordering::Equal => match x.1.cmp(&y.1) {
                    Ordering::Equal => continue,
                    other => return other,
                },
                // The larger variable is present in `x` but absent in `y`.
                other => return other,
            }
        }
        ka.len().cmp(&kb.len())
    }
}

#[derive(Serialize, Deserialize)]
struct OrderRepr {
    kind: OrderKind,
    variables: Vec<Var>,
}

impl Serialize for TermOrder {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        OrderRepr {
            kind: self.kind,
            variables: self.descending_variables(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TermOrder {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = OrderRepr::deserialize(d)?;
        let mut seen = std::collections::BTreeSet::new();
        if !repr.variables.iter().all(|v| seen.insert(*v)) {
            return Err(serde::de::Error::custom(
                "variable listed twice in term order",
            ));
        }
        Ok(TermOrder::with_descending(repr.kind, &repr.variables))
    }
}
