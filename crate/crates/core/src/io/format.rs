//! Line-oriented text formats for categories and functors.
//!
//! A category document:
//!
//! ```text
//! # two parallel arrows
//! objects: 2
//! mor alpha: 0 -> 1
//! mor beta: 0 -> 1
//! comp g . f = h
//! ```
//!
//! Objects are the integers `0..n`. Morphism names are identifiers. A
//! functor document maps every source object and morphism:
//!
//! ```text
//! obj 0 -> 0
//! mor alpha -> beta
//! mor beta -> id(1)
//! ```

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use thiserror::Error;

use crate::category::{
    Category, CategoryError, Composite, Functor, FunctorError, MorphismId, MorphismRef, ObjectId,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: unknown name `{name}`")]
    UnknownName { line: usize, name: String },
    #[error("line {line}: `{name}` is defined twice")]
    DuplicateName { line: usize, name: String },
    #[error("incomplete document: {0}")]
    Incomplete(String),
    #[error("{}{source}", location(*line))]
    Category {
        line: Option<usize>,
        source: CategoryError,
    },
    #[error("{}{source}", location(*line))]
    Functor {
        line: Option<usize>,
        source: FunctorError,
    },
}

fn location(line: Option<usize>) -> String {
    line.map(|l| format!("line {l}: ")).unwrap_or_default()
}

/// A category together with the names of its morphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CategoryDoc {
    pub category: Arc<Category>,
    pub morphism_names: Vec<String>,
}

impl CategoryDoc {
    /// Names morphisms `m0, m1, ...`.
    pub fn with_default_names(category: Arc<Category>) -> CategoryDoc {
        let morphism_names = (0..category.n_morphisms())
            .map(|i| format!("m{i}"))
            .collect();
        CategoryDoc {
            category,
            morphism_names,
        }
    }

    pub fn name(&self, m: MorphismId) -> &str {
        &self.morphism_names[m.0]
    }

    pub fn lookup(&self, name: &str) -> Option<MorphismId> {
        self.morphism_names
            .iter()
            .position(|n| n == name)
            .map(MorphismId)
    }
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
    line: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str, line: usize) -> Self {
        Cursor { text, pos: 0, line }
    }

    fn skip_ws(&mut self) {
        while self.text[self.pos..].starts_with([' ', '\t']) {
            self.pos += 1;
        }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, FormatError> {
        Err(FormatError::Parse {
            line: self.line,
            column: self.pos + 1,
            message: message.into(),
        })
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.text.len()
    }

    fn expect_end(&mut self) -> Result<(), FormatError> {
        if self.at_end() {
            Ok(())
        } else {
            self.error("unexpected trailing input")
        }
    }

    fn literal(&mut self, lit: &str) -> Result<(), FormatError> {
        self.skip_ws();
        if self.text[self.pos..].starts_with(lit) {
            self.pos += lit.len();
            Ok(())
        } else {
            self.error(format!("expected `{lit}`"))
        }
    }

    fn peek(&mut self, lit: &str) -> bool {
        self.skip_ws();
        self.text[self.pos..].starts_with(lit)
    }

    fn name(&mut self) -> Result<&'a str, FormatError> {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let len = rest
            .char_indices()
            .find(|&(i, ch)| !(ch == '_' || ch.is_ascii_alphanumeric() || (i > 0 && ch == '\'')))
            .map_or(rest.len(), |(i, _)| i);
        if len == 0 || rest.starts_with(|ch: char| ch.is_ascii_digit()) {
            return self.error("expected a name");
        }
        self.pos += len;
        Ok(&rest[..len])
    }

    fn number(&mut self) -> Result<usize, FormatError> {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let len = rest
            .find(|ch: char| !ch.is_ascii_digit())
            .unwrap_or(rest.len());
        if len == 0 {
            return self.error("expected a non-negative integer");
        }
        match rest[..len].parse() {
            Ok(n) => {
                self.pos += len;
                Ok(n)
            }
            Err(_) => self.error("integer out of range"),
        }
    }

    fn object(&mut self, n_objects: usize) -> Result<ObjectId, FormatError> {
        let start = self.pos;
        let x = self.number()?;
        if x >= n_objects {
            self.pos = start;
            self.skip_ws();
            return self.error(format!("object {x} is out of range 0..{n_objects}"));
        }
        Ok(ObjectId(x))
    }
}

/// Non-empty, comment-stripped lines with their 1-based numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim_end();
        (!line.trim().is_empty()).then_some((i + 1, line))
    })
}

pub fn parse_category(text: &str) -> Result<CategoryDoc, FormatError> {
    let mut n_objects: Option<usize> = None;
    let mut names: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut endpoints = Vec::new();
    let mut morphism_lines = Vec::new();
    let mut composites = Vec::new();
    let mut composite_lines: HashMap<(MorphismId, MorphismId), usize> = HashMap::new();

    for (line_no, line) in content_lines(text) {
        let mut cur = Cursor::new(line, line_no);
        if cur.peek("objects") {
            cur.literal("objects")?;
            cur.literal(":")?;
            if n_objects.is_some() {
                return cur.error("`objects` given twice");
            }
            n_objects = Some(cur.number()?);
            cur.expect_end()?;
            continue;
        }
        let Some(n) = n_objects else {
            return cur.error("expected `objects: <n>` before anything else");
        };
        if cur.peek("mor") {
            cur.literal("mor")?;
            let name = cur.name()?;
            cur.literal(":")?;
            let src = cur.object(n)?;
            cur.literal("->")?;
            let tgt = cur.object(n)?;
            cur.expect_end()?;
            if index.contains_key(name) {
                return Err(FormatError::DuplicateName {
                    line: line_no,
                    name: name.to_string(),
                });
            }
            index.insert(name.to_string(), names.len());
            names.push(name.to_string());
            endpoints.push((src, tgt));
            morphism_lines.push(line_no);
        } else if cur.peek("comp") {
            cur.literal("comp")?;
            let lookup = |cur: &mut Cursor| -> Result<MorphismId, FormatError> {
                let name = cur.name()?;
                index
                    .get(name)
                    .map(|&i| MorphismId(i))
                    .ok_or_else(|| FormatError::UnknownName {
                        line: line_no,
                        name: name.to_string(),
                    })
            };
            let g = lookup(&mut cur)?;
            cur.literal(".")?;
            let f = lookup(&mut cur)?;
            cur.literal("=")?;
            let h = lookup(&mut cur)?;
            cur.expect_end()?;
            composites.push(Composite { g, f, h });
            composite_lines.entry((g, f)).or_insert(line_no);
        } else {
            return cur.error("expected `mor` or `comp`");
        }
    }

    let n = n_objects.ok_or_else(|| FormatError::Incomplete("missing `objects: <n>`".into()))?;
    let category = Category::new(n, endpoints, &composites).map_err(|e| {
        let line = match &e {
            CategoryError::ObjectOutOfRange { morphism, .. }
            | CategoryError::EndoMorphism { morphism, .. } => {
                morphism_lines.get(morphism.0).copied()
            }
            CategoryError::BadComposite { g, f, .. }
            | CategoryError::DuplicateComposite { g, f }
            | CategoryError::NonAssociative { g, f, .. } => composite_lines.get(&(*g, *f)).copied(),
            CategoryError::MissingComposite { f, .. } => morphism_lines.get(f.0).copied(),
            CategoryError::CycleDetected { .. } | CategoryError::MorphismOutOfRange(_) => None,
        };
        FormatError::Category { line, source: e }
    })?;
    Ok(CategoryDoc {
        category: Arc::new(category),
        morphism_names: names,
    })
}

pub fn serialize_category(doc: &CategoryDoc) -> String {
    let c = &doc.category;
    let mut out = String::new();
    writeln!(out, "objects: {}", c.n_objects()).unwrap();
    for m in c.morphism_ids() {
        let e = c.endpoints(m);
        writeln!(out, "mor {}: {} -> {}", doc.name(m), e.src, e.tgt).unwrap();
    }
    for cp in c.composites() {
        writeln!(
            out,
            "comp {} . {} = {}",
            doc.name(cp.g),
            doc.name(cp.f),
            doc.name(cp.h)
        )
        .unwrap();
    }
    out
}

pub fn parse_functor(
    text: &str,
    source: &CategoryDoc,
    target: &CategoryDoc,
) -> Result<Functor, FormatError> {
    let (s, t) = (&source.category, &target.category);
    let mut objects: Vec<Option<ObjectId>> = vec![None; s.n_objects()];
    let mut morphisms: Vec<Option<MorphismRef>> = vec![None; s.n_morphisms()];
    let mut morphism_lines = vec![0usize; s.n_morphisms()];

    for (line_no, line) in content_lines(text) {
        let mut cur = Cursor::new(line, line_no);
        if cur.peek("obj") {
            cur.literal("obj")?;
            let x = cur.object(s.n_objects())?;
            cur.literal("->")?;
            let y = cur.object(t.n_objects())?;
            cur.expect_end()?;
            if objects[x.0].replace(y).is_some() {
                return Err(FormatError::DuplicateName {
                    line: line_no,
                    name: x.to_string(),
                });
            }
        } else if cur.peek("mor") {
            cur.literal("mor")?;
            let name = cur.name()?;
            let m = source
                .lookup(name)
                .ok_or_else(|| FormatError::UnknownName {
                    line: line_no,
                    name: name.to_string(),
                })?;
            cur.literal("->")?;
            let image = if cur.peek("id(") {
                cur.literal("id(")?;
                let x = cur.object(t.n_objects())?;
                cur.literal(")")?;
                MorphismRef::Identity(x)
            } else {
                let name = cur.name()?;
                MorphismRef::NonIdentity(target.lookup(name).ok_or_else(|| {
                    FormatError::UnknownName {
                        line: line_no,
                        name: name.to_string(),
                    }
                })?)
            };
            cur.expect_end()?;
            if morphisms[m.0].replace(image).is_some() {
                return Err(FormatError::DuplicateName {
                    line: line_no,
                    name: name.to_string(),
                });
            }
            morphism_lines[m.0] = line_no;
        } else {
            return cur.error("expected `obj` or `mor`");
        }
    }

    let objects = objects
        .into_iter()
        .enumerate()
        .map(|(i, y)| y.ok_or_else(|| FormatError::Incomplete(format!("no image for object {i}"))))
        .collect::<Result<Vec<_>, _>>()?;
    let morphisms = morphisms
        .into_iter()
        .enumerate()
        .map(|(i, y)| {
            y.ok_or_else(|| {
                FormatError::Incomplete(format!(
                    "no image for morphism `{}`",
                    source.morphism_names[i]
                ))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Functor::new(s.clone(), t.clone(), objects, morphisms).map_err(|e| {
        let line = match &e {
            FunctorError::EndpointMismatch { morphism } => Some(morphism_lines[morphism.0]),
            FunctorError::CompositionNotPreserved { f, .. } => Some(morphism_lines[f.0]),
            _ => None,
        };
        FormatError::Functor { line, source: e }
    })
}

pub fn serialize_functor(f: &Functor, source: &CategoryDoc, target: &CategoryDoc) -> String {
    let mut out = String::new();
    for x in f.source().objects() {
        writeln!(out, "obj {} -> {}", x, f.object(x)).unwrap();
    }
    for m in f.source().morphism_ids() {
        match f.morphism(m) {
            MorphismRef::Identity(x) => writeln!(out, "mor {} -> id({})", source.name(m), x),
            MorphismRef::NonIdentity(n) => {
                writeln!(out, "mor {} -> {}", source.name(m), target.name(n))
            }
        }
        .unwrap();
    }
    out
}

/// Category and endofunctor with default names, separated by a `---` line.
pub fn instance_text(f: &Functor) -> String {
    let doc = CategoryDoc::with_default_names(f.source().clone());
    let target = if f.is_endofunctor() {
        doc.clone()
    } else {
        CategoryDoc::with_default_names(f.target().clone())
    };
    format!(
        "{}---\n{}",
        serialize_category(&doc),
        serialize_functor(f, &doc, &target)
    )
}

/// Hex SHA-256 of the canonical serialization of a category.
pub fn category_digest(doc: &CategoryDoc) -> String {
    use sha2::{Digest, Sha256};
    hex::encode(Sha256::digest(serialize_category(doc).as_bytes()))
}

/// Hex SHA-256 of the canonical serialization of a category and endofunctor.
pub fn instance_digest(doc: &CategoryDoc, f: &Functor) -> String {
    use sha2::{Digest, Sha256};
    let mut hasher = Sha256::new();
    hasher.update(serialize_category(doc).as_bytes());
    hasher.update(b"---\n");
    hasher.update(serialize_functor(f, doc, doc).as_bytes());
    hex::encode(hasher.finalize())
}
