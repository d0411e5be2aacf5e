//! Quivers and their doubles.
//!
//! A quiver is a finite directed multigraph. Its double adds, for every
//! arrow `a`, a reversed arrow written `a*`. Edges of the double are
//! addressed as an arrow index plus a star flag; the total order on edges
//! is (arrow declaration index, unstarred before starred), so for arrows
//! declared `a`, `b` the edge order is `a < a* < b < b*`.
//!
//! The pairing `⟨e, f⟩` is `+1` when `e` is an original arrow and `f` is
//! its star, `-1` the other way around, and `0` otherwise; it is the
//! antisymmetric form that drives every bracket and rewrite rule downstream.

use std::fmt;

use crate::lexer::{Cursor, Tok};
use crate::{Error, Result};

/// Index into [`Quiver::vertices`].
pub type VertexId = usize;

/// An arrow of the underlying quiver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: VertexId,
    pub target: VertexId,
}

/// An edge of the double quiver: an arrow or its starred reverse.
///
/// The derived order is (arrow index, star flag), i.e. declaration order
/// with each arrow immediately followed by its star.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub arrow: usize,
    pub starred: bool,
}

impl Edge {
    /// The same arrow with the star flag toggled.
    pub fn star(self) -> Edge {
        Edge { arrow: self.arrow, starred: !self.starred }
    }
}

/// A finite quiver with named vertices and arrows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    /// Build from explicit parts, checking name uniqueness and endpoints.
    pub fn from_parts(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Self> {
        let q = Quiver { vertices, arrows };
        for (i, v) in q.vertices.iter().enumerate() {
            if q.vertices[..i].contains(v) {
                return Err(Error::Quiver(format!("duplicate vertex `{v}`")));
            }
        }
        for (i, a) in q.arrows.iter().enumerate() {
            if q.arrows[..i].iter().any(|b| b.name == a.name) {
                return Err(Error::Quiver(format!("duplicate arrow `{}`", a.name)));
            }
            if crate::lexer::is_scalar_name(&a.name) {
                return Err(Error::Quiver(format!(
                    "arrow name `{}` is reserved for scalars",
                    a.name
                )));
            }
            if a.source >= q.vertices.len() || a.target >= q.vertices.len() {
                return Err(Error::Quiver(format!(
                    "arrow `{}` has an undeclared endpoint",
                    a.name
                )));
            }
        }
        Ok(q)
    }

    /// Parse the declaration format: one `vertex <name>` or
    /// `arrow <name>: <source> -> <target>` per line, `#` comments.
    pub fn parse(input: &str) -> Result<Self> {
        let mut vertices: Vec<String> = Vec::new();
        let mut raw_arrows: Vec<(String, String, String)> = Vec::new();
        for (lineno, raw_line) in input.lines().enumerate() {
            let line = match raw_line.find('#') {
                Some(i) => &raw_line[..i],
                None => raw_line,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let bad = |msg: &str| {
                Error::Parse(format!("line {}: {msg}: `{line}`", lineno + 1))
            };
            if let Some(rest) = line.strip_prefix("vertex ") {
                let name = rest.trim();
                if !is_plain_ident(name) {
                    return Err(bad("bad vertex name"));
                }
                vertices.push(name.to_string());
            } else if let Some(rest) = line.strip_prefix("arrow ") {
                let (name, ends) = rest
                    .split_once(':')
                    .ok_or_else(|| bad("expected `arrow <name>: <src> -> <dst>`"))?;
                let (src, dst) = ends
                    .split_once("->")
                    .ok_or_else(|| bad("expected `<src> -> <dst>`"))?;
                let (name, src, dst) = (name.trim(), src.trim(), dst.trim());
                if !is_plain_ident(name) || !is_plain_ident(src) || !is_plain_ident(dst) {
                    return Err(bad("bad name in arrow declaration"));
                }
                raw_arrows.push((name.to_string(), src.to_string(), dst.to_string()));
            } else {
                return Err(bad("expected `vertex` or `arrow` declaration"));
            }
        }
        let vid = |name: &str| {
            vertices
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| Error::Quiver(format!("undeclared vertex `{name}`")))
        };
        let mut arrows = Vec::new();
        for (name, src, dst) in raw_arrows {
            arrows.push(Arrow { name, source: vid(&src)?, target: vid(&dst)? });
        }
        Quiver::from_parts(vertices, arrows)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_id(&self, name: &str) -> Result<VertexId> {
        self.vertices
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::Quiver(format!("unknown vertex `{name}`")))
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v]
    }

    /// Look up an edge of the double quiver by arrow name and star flag.
    pub fn edge_named(&self, name: &str, starred: bool) -> Result<Edge> {
        let arrow = self
            .arrows
            .iter()
            .position(|a| a.name == name)
            .ok_or_else(|| Error::Quiver(format!("unknown arrow `{name}`")))?;
        Ok(Edge { arrow, starred })
    }

    /// All edges of the double quiver in the canonical order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.arrows.len()).flat_map(|arrow| {
            [Edge { arrow, starred: false }, Edge { arrow, starred: true }]
        })
    }

    /// Source vertex of an edge; a star reverses the underlying arrow.
    pub fn source(&self, e: Edge) -> VertexId {
        let a = &self.arrows[e.arrow];
        if e.starred { a.target } else { a.source }
    }

    /// Target vertex of an edge.
    pub fn target(&self, e: Edge) -> VertexId {
        let a = &self.arrows[e.arrow];
        if e.starred { a.source } else { a.target }
    }

    /// The antisymmetric pairing: `⟨a, a*⟩ = 1`, `⟨a*, a⟩ = -1`, else 0.
    pub fn pairing(&self, e: Edge, f: Edge) -> i64 {
        if e.arrow == f.arrow {
            if !e.starred && f.starred {
                return 1;
            }
            if e.starred && !f.starred {
                return -1;
            }
        }
        0
    }

    /// Printable name of an edge (`a` or `a*`).
    pub fn edge_name(&self, e: Edge) -> String {
        let base = &self.arrows[e.arrow].name;
        if e.starred { format!("{base}*") } else { base.clone() }
    }

    /// Consume one edge token (`a` or `a*`) from a cursor.
    pub(crate) fn parse_edge_token(&self, cur: &mut Cursor) -> Result<Edge> {
        match cur.next() {
            Some(Tok::Ident(name)) => self.edge_named(&name, false),
            Some(Tok::Starred(name)) => self.edge_named(&name, true),
            other => Err(Error::Parse(format!("expected an edge, found {other:?}"))),
        }
    }
}

fn is_plain_ident(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_alphanumeric() || c == '_')
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.vertices {
            writeln!(f, "vertex {v}")?;
        }
        for a in &self.arrows {
            writeln!(
                f,
                "arrow {}: {} -> {}",
                a.name, self.vertices[a.source], self.vertices[a.target]
            )?;
        }
        Ok(())
    }
}
