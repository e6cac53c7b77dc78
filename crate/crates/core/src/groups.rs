//! Vertex groups: finite multiplication tables, cyclic groups and the
//! infinite cyclic group, together with isomorphisms between them.
//!
//! Elements are represented by an `i64` value. For cyclic and table groups
//! this is the element index (identity `0`); for the infinite cyclic group it
//! is the exponent of the generator.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::Vertex;

/// A finite group given by a validated Cayley table. Index 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteTable {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
}

impl FiniteTable {
    /// Validates the group axioms exhaustively: closure, identity row and
    /// column at index 0, associativity and two-sided inverses.
    pub fn new(names: Vec<String>, table: Vec<Vec<usize>>) -> std::result::Result<Self, String> {
        let n = names.len();
        if n < 2 {
            return Err("vertex groups must be non-trivial".into());
        }
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(format!("duplicate element name {a:?}"));
            }
            if a.parse::<i64>().is_ok() {
                return Err(format!("element name {a:?} must not be numeric"));
            }
        }
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(format!("table must be {n}x{n}"));
        }
        if table.iter().flatten().any(|&x| x >= n) {
            return Err("table entry out of range".into());
        }
        for (i, row) in table.iter().enumerate() {
            if table[0][i] != i || row[0] != i {
                return Err(format!("first element {:?} is not an identity", names[0]));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(format!(
                            "not associative on ({}, {}, {})",
                            names[a], names[b], names[c]
                        ));
                    }
                }
            }
        }
        let mut inverse = Vec::with_capacity(n);
        for a in 0..n {
            match (0..n).find(|&b| table[a][b] == 0 && table[b][a] == 0) {
                Some(b) => inverse.push(b),
                None => return Err(format!("element {:?} has no inverse", names[a])),
            }
        }
        Ok(FiniteTable { names, table, inverse })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VertexGroup {
    Cyclic { order: u32 },
    Infinite,
    Table(FiniteTable),
}

impl VertexGroup {
    pub fn cyclic(order: u32) -> Result<Self> {
        if order < 2 {
            return Err(Error::InvalidGroup {
                vertex: String::new(),
                reason: format!("cyclic order must be at least 2, got {order}"),
            });
        }
        Ok(VertexGroup::Cyclic { order })
    }

    pub fn z2() -> Self {
        VertexGroup::Cyclic { order: 2 }
    }

    pub fn is_finite(&self) -> bool {
        !matches!(self, VertexGroup::Infinite)
    }

    pub fn order(&self) -> Option<usize> {
        match self {
            VertexGroup::Cyclic { order } => Some(*order as usize),
            VertexGroup::Infinite => None,
            VertexGroup::Table(t) => Some(t.names.len()),
        }
    }

    pub fn contains(&self, value: i64) -> bool {
        match self.order() {
            Some(n) => value >= 0 && (value as usize) < n,
            None => true,
        }
    }

    pub fn mul(&self, a: i64, b: i64) -> i64 {
        match self {
            VertexGroup::Cyclic { order } => (a + b).rem_euclid(*order as i64),
            VertexGroup::Infinite => a + b,
            VertexGroup::Table(t) => t.table[a as usize][b as usize] as i64,
        }
    }

    pub fn inv(&self, a: i64) -> i64 {
        match self {
            VertexGroup::Cyclic { order } => (-a).rem_euclid(*order as i64),
            VertexGroup::Infinite => -a,
            VertexGroup::Table(t) => t.inverse[a as usize] as i64,
        }
    }

    pub fn pow(&self, a: i64, k: i64) -> i64 {
        match self {
            VertexGroup::Infinite => a * k,
            _ => {
                let base = if k < 0 { self.inv(a) } else { a };
                (0..k.abs()).fold(0, |acc, _| self.mul(acc, base))
            }
        }
    }

    /// All non-identity elements in index order.
    pub fn enumerate(&self) -> Result<Vec<i64>> {
        match self.order() {
            Some(n) => Ok((1..n as i64).collect()),
            None => Err(Error::Unsupported(
                "enumeration of an infinite cyclic vertex group".into(),
            )),
        }
    }

    /// Every element including the identity.
    pub fn elements(&self) -> Result<Vec<i64>> {
        let mut out = vec![0];
        out.extend(self.enumerate()?);
        Ok(out)
    }

    /// A finite generating set for checks that only need generators: the
    /// generator `1` for cyclic kinds, every element for tables.
    pub fn generators(&self) -> Vec<i64> {
        match self {
            VertexGroup::Cyclic { .. } | VertexGroup::Infinite => vec![1],
            VertexGroup::Table(t) => (1..t.names.len() as i64).collect(),
        }
    }

    /// Elements whose commutation with everything is decided by checking
    /// them: all non-identity elements if finite, the generator otherwise.
    pub fn test_elements(&self) -> Vec<i64> {
        self.enumerate().unwrap_or_else(|_| vec![1])
    }

    pub fn element_order(&self, a: i64) -> Option<usize> {
        let n = self.order()?;
        let mut x = a;
        for k in 1..=n {
            if x == 0 {
                return Some(k);
            }
            x = self.mul(x, a);
        }
        None
    }

    /// Renders an element as a document token.
    pub fn token(&self, a: i64) -> serde_json::Value {
        match self {
            VertexGroup::Table(t) => serde_json::Value::String(t.names[a as usize].clone()),
            _ => serde_json::Value::from(a),
        }
    }

    /// Parses an element token: an integer (index / exponent) for every kind,
    /// or an element name for table groups.
    pub fn parse_token(&self, token: &serde_json::Value) -> std::result::Result<i64, String> {
        let value = match token {
            serde_json::Value::Number(n) => n.as_i64().ok_or_else(|| format!("bad element {n}"))?,
            serde_json::Value::String(s) => match self {
                VertexGroup::Table(t) => match t.names.iter().position(|x| x == s) {
                    Some(i) => i as i64,
                    None => s.parse::<i64>().map_err(|_| format!("unknown element {s:?}"))?,
                },
                _ => s.parse::<i64>().map_err(|_| format!("bad element {s:?}"))?,
            },
            other => return Err(format!("element token must be a number or string, got {other}")),
        };
        if !self.contains(value) {
            return Err(format!("element {value} out of range"));
        }
        Ok(value)
    }

    /// Extends a partial assignment `a ↦ φ(a)` to a homomorphism
    /// `self → target` by closing under products. Fails when the assignment
    /// is inconsistent or does not generate `self`. Only for finite `self`.
    pub fn extend_homomorphism(
        &self,
        target: &VertexGroup,
        seeds: &[(i64, i64)],
    ) -> std::result::Result<Vec<i64>, String> {
        let n = self.order().ok_or("closure needs a finite source group")?;
        let mut map: Vec<Option<i64>> = vec![None; n];
        map[0] = Some(0);
        let mut queue = VecDeque::from([0i64]);
        for &(a, b) in seeds {
            if !self.contains(a) || !target.contains(b) {
                return Err(format!("assignment {a} -> {b} out of range"));
            }
        }
        while let Some(x) = queue.pop_front() {
            let fx = map[x as usize].unwrap();
            for &(s, fs) in seeds {
                let y = self.mul(x, s);
                let fy = target.mul(fx, fs);
                match map[y as usize] {
                    Some(prev) if prev != fy => {
                        return Err("assignment does not extend to a homomorphism".into())
                    }
                    Some(_) => {}
                    None => {
                        map[y as usize] = Some(fy);
                        queue.push_back(y);
                    }
                }
            }
        }
        if map.iter().any(|m| m.is_none()) {
            return Err("assigned elements do not generate the group".into());
        }
        let map: Vec<i64> = map.into_iter().map(Option::unwrap).collect();
        for a in 0..n as i64 {
            for b in 0..n as i64 {
                if map[self.mul(a, b) as usize] != target.mul(map[a as usize], map[b as usize]) {
                    return Err("assignment does not extend to a homomorphism".into());
                }
            }
        }
        Ok(map)
    }

    /// A small generating set, greedily chosen in index order.
    fn generating_set(&self) -> Vec<i64> {
        let n = self.order().expect("finite");
        let mut gens = Vec::new();
        let mut span = vec![false; n];
        span[0] = true;
        for a in 1..n as i64 {
            if span[a as usize] {
                continue;
            }
            gens.push(a);
            // recompute the generated subgroup
            let mut queue = VecDeque::from([0i64]);
            let mut seen = vec![false; n];
            seen[0] = true;
            while let Some(x) = queue.pop_front() {
                for &g in &gens {
                    let y = self.mul(x, g);
                    if !seen[y as usize] {
                        seen[y as usize] = true;
                        queue.push_back(y);
                    }
                }
            }
            span = seen;
        }
        gens
    }

    /// Every isomorphism `self → target`, as element maps. Empty when the
    /// groups are not isomorphic. For two infinite cyclic groups the two
    /// maps are `t ↦ t` and `t ↦ t⁻¹`.
    pub fn isomorphisms(&self, target: &VertexGroup) -> Vec<IsoMap> {
        match (self.order(), target.order()) {
            (None, None) => vec![IsoMap::Exponent(1), IsoMap::Exponent(-1)],
            (Some(n), Some(m)) if n == m => {
                let gens = self.generating_set();
                let mut out = Vec::new();
                let mut images = Vec::with_capacity(gens.len());
                self.search_isos(target, &gens, &mut images, &mut out);
                out.sort();
                out
            }
            _ => Vec::new(),
        }
    }

    fn search_isos(
        &self,
        target: &VertexGroup,
        gens: &[i64],
        images: &mut Vec<i64>,
        out: &mut Vec<IsoMap>,
    ) {
        if images.len() == gens.len() {
            let seeds: Vec<(i64, i64)> = gens.iter().copied().zip(images.iter().copied()).collect();
            if let Ok(map) = self.extend_homomorphism(target, &seeds) {
                let mut hit = vec![false; map.len()];
                if map.iter().all(|&x| !std::mem::replace(&mut hit[x as usize], true)) {
                    out.push(IsoMap::Table(map));
                }
            }
            return;
        }
        let g = gens[images.len()];
        let ord = self.element_order(g);
        for b in 1..target.order().unwrap() as i64 {
            if target.element_order(b) == ord {
                images.push(b);
                self.search_isos(target, gens, images, out);
                images.pop();
            }
        }
    }
}

/// A syllable value tagged with its vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement {
    pub vertex: Vertex,
    pub value: i64,
}

impl GroupElement {
    pub fn new(vertex: Vertex, value: i64) -> Self {
        GroupElement { vertex, value }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum IsoMap {
    /// Element-wise image table indexed by source value.
    Table(Vec<i64>),
    /// `t^k ↦ t^(e·k)` for infinite cyclic groups, `e = ±1`.
    Exponent(i64),
}

/// A validated isomorphism `G_source → G_target`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupIso {
    pub source: Vertex,
    pub target: Vertex,
    pub map: IsoMap,
}

impl GroupIso {
    /// Checks bijectivity and multiplicativity (exhaustively for finite
    /// groups).
    pub fn new(
        source: Vertex,
        source_group: &VertexGroup,
        target: Vertex,
        target_group: &VertexGroup,
        map: IsoMap,
    ) -> std::result::Result<Self, String> {
        match (&map, source_group.order(), target_group.order()) {
            (IsoMap::Exponent(e), None, None) => {
                if e.abs() != 1 {
                    return Err(format!("exponent {e} is not an isomorphism of Z"));
                }
            }
            (IsoMap::Table(t), Some(n), Some(m)) => {
                if n != m || t.len() != n {
                    return Err("isomorphism table has the wrong size".into());
                }
                let mut hit = vec![false; m];
                for &x in t {
                    if x < 0 || x as usize >= m || std::mem::replace(&mut hit[x as usize], true) {
                        return Err("isomorphism table is not a bijection".into());
                    }
                }
                for a in 0..n as i64 {
                    for b in 0..n as i64 {
                        let lhs = t[source_group.mul(a, b) as usize];
                        let rhs = target_group.mul(t[a as usize], t[b as usize]);
                        if lhs != rhs {
                            return Err(format!("not multiplicative on ({a}, {b})"));
                        }
                    }
                }
            }
            _ => return Err("isomorphism kind does not match the groups".into()),
        }
        Ok(GroupIso { source, target, map })
    }

    pub fn identity(v: Vertex, group: &VertexGroup) -> Self {
        let map = match group.order() {
            Some(n) => IsoMap::Table((0..n as i64).collect()),
            None => IsoMap::Exponent(1),
        };
        GroupIso { source: v, target: v, map }
    }

    pub fn apply(&self, value: i64) -> i64 {
        match &self.map {
            IsoMap::Table(t) => t[value as usize],
            IsoMap::Exponent(e) => e * value,
        }
    }

    pub fn apply_element(&self, g: GroupElement) -> GroupElement {
        debug_assert_eq!(g.vertex, self.source);
        GroupElement::new(self.target, self.apply(g.value))
    }

    pub fn inverse(&self) -> GroupIso {
        let map = match &self.map {
            IsoMap::Table(t) => {
                let mut inv = vec![0; t.len()];
                for (a, &b) in t.iter().enumerate() {
                    inv[b as usize] = a as i64;
                }
                IsoMap::Table(inv)
            }
            IsoMap::Exponent(e) => IsoMap::Exponent(*e),
        };
        GroupIso { source: self.target, target: self.source, map }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GroupIso) -> GroupIso {
        debug_assert_eq!(self.target, other.source);
        let map = match (&self.map, &other.map) {
            (IsoMap::Table(a), IsoMap::Table(_)) => {
                IsoMap::Table(a.iter().map(|&x| other.apply(x)).collect())
            }
            (IsoMap::Exponent(a), IsoMap::Exponent(b)) => IsoMap::Exponent(a * b),
            _ => unreachable!("isomorphisms between groups of different kinds"),
        };
        GroupIso { source: self.source, target: other.target, map }
    }

    pub fn is_identity_map(&self) -> bool {
        match &self.map {
            IsoMap::Table(t) => t.iter().enumerate().all(|(i, &x)| i as i64 == x),
            IsoMap::Exponent(e) => *e == 1,
        }
    }
}
