use std::io::{BufRead, Write};

use indexmap::IndexMap;
use num_traits::Float;

use crate::model::Iri;

use super::EbrError;

const HEADER: &str = "EBR1";

/// Entity and relation embedding tables with bilinear-diagonal scoring
/// `score(h, r, t) = Σ h_i r_i t_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingModel<F> {
    dim: usize,
    entity_index: IndexMap<Iri, usize>,
    relation_index: IndexMap<Iri, usize>,
    pub(crate) entities: Vec<F>,
    pub(crate) relations: Vec<F>,
}

pub type EmbeddingModel64 = EmbeddingModel<f64>;
pub type EmbeddingModel32 = EmbeddingModel<f32>;

pub fn sigmoid<F: Float>(x: F) -> F {
    if x >= F::zero() {
        F::one() / (F::one() + (-x).exp())
    } else {
        let e = x.exp();
        e / (F::one() + e)
    }
}

/// Binary cross-entropy of `sigmoid(s)` against `label`, computed stably
/// as `softplus(s) - label * s`.
pub fn bce_with_logit<F: Float>(s: F, label: F) -> F {
    let softplus = s.max(F::zero()) + (-s.abs()).exp().ln_1p();
    softplus - label * s
}

impl<F: Float> EmbeddingModel<F> {
    /// A model with all vectors zero.
    pub fn zeros<'a>(
        dim: usize,
        entities: impl IntoIterator<Item = &'a Iri>,
        relations: impl IntoIterator<Item = &'a Iri>,
    ) -> EmbeddingModel<F> {
        let mut entity_index = IndexMap::new();
        for e in entities {
            let n = entity_index.len();
            entity_index.entry(e.clone()).or_insert(n);
        }
        let mut relation_index = IndexMap::new();
        for r in relations {
            let n = relation_index.len();
            relation_index.entry(r.clone()).or_insert(n);
        }
        EmbeddingModel {
            dim,
            entities: vec![F::zero(); dim * entity_index.len()],
            relations: vec![F::zero(); dim * relation_index.len()],
            entity_index,
            relation_index,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entity_count(&self) -> usize {
        self.entity_index.len()
    }

    pub fn relation_count(&self) -> usize {
        self.relation_index.len()
    }

    pub fn entity_iris(&self) -> impl Iterator<Item = &Iri> {
        self.entity_index.keys()
    }

    pub fn relation_iris(&self) -> impl Iterator<Item = &Iri> {
        self.relation_index.keys()
    }

    pub fn entity_id(&self, iri: &Iri) -> Option<usize> {
        self.entity_index.get(iri).copied()
    }

    pub fn relation_id(&self, iri: &Iri) -> Option<usize> {
        self.relation_index.get(iri).copied()
    }

    pub fn entity(&self, id: usize) -> &[F] {
        &self.entities[id * self.dim..(id + 1) * self.dim]
    }

    pub fn relation(&self, id: usize) -> &[F] {
        &self.relations[id * self.dim..(id + 1) * self.dim]
    }

    pub fn entity_mut(&mut self, id: usize) -> &mut [F] {
        &mut self.entities[id * self.dim..(id + 1) * self.dim]
    }

    pub fn relation_mut(&mut self, id: usize) -> &mut [F] {
        &mut self.relations[id * self.dim..(id + 1) * self.dim]
    }

    pub fn score_ids(&self, h: usize, r: usize, t: usize) -> F {
        let (h, r, t) = (self.entity(h), self.relation(r), self.entity(t));
        (0..self.dim).fold(F::zero(), |acc, i| acc + h[i] * r[i] * t[i])
    }

    pub fn score(&self, head: &Iri, relation: &Iri, tail: &Iri) -> Result<F, EbrError> {
        let h = self
            .entity_id(head)
            .ok_or_else(|| EbrError::UnknownSymbol(head.clone()))?;
        let r = self
            .relation_id(relation)
            .ok_or_else(|| EbrError::UnknownSymbol(relation.clone()))?;
        let t = self
            .entity_id(tail)
            .ok_or_else(|| EbrError::UnknownSymbol(tail.clone()))?;
        Ok(self.score_ids(h, r, t))
    }

    pub fn probability(&self, head: &Iri, relation: &Iri, tail: &Iri) -> Result<F, EbrError> {
        self.score(head, relation, tail).map(sigmoid)
    }

    pub fn is_finite(&self) -> bool {
        self.entities
            .iter()
            .chain(&self.relations)
            .all(|v| v.is_finite())
    }

    /// Writes the text format: a header line `EBR1 d=<dim>`, then
    /// `entities <n>` and `relations <m>` sections of
    /// `iri TAB v1 TAB ... TAB vd` rows. Values round-trip exactly.
    pub fn save<W: Write>(&self, mut out: W) -> Result<(), EbrError> {
        writeln!(out, "{HEADER} d={}", self.dim)?;
        let mut table =
            |name: &str, index: &IndexMap<Iri, usize>, data: &[F]| -> std::io::Result<()> {
                writeln!(out, "{name} {}", index.len())?;
                for (iri, &id) in index {
                    write!(out, "{iri}")?;
                    for v in &data[id * self.dim..(id + 1) * self.dim] {
                        write!(out, "\t{}", v.to_f64().unwrap_or(f64::NAN))?;
                    }
                    writeln!(out)?;
                }
                Ok(())
            };
        table("entities", &self.entity_index, &self.entities)?;
        table("relations", &self.relation_index, &self.relations)?;
        Ok(())
    }

    pub fn load<R: BufRead>(input: R) -> Result<EmbeddingModel<F>, EbrError> {
        let mut lines = input.lines().enumerate();
        let mut next = |what: &str| -> Result<(usize, String), EbrError> {
            match lines.next() {
                Some((i, line)) => Ok((i + 1, line?)),
                None => Err(EbrError::Format {
                    line: 0,
                    message: format!("unexpected end of file, expected {what}"),
                }),
            }
        };
        let bad = |line: usize, message: String| EbrError::Format { line, message };

        let (n, header) = next("header")?;
        let dim: usize = header
            .strip_prefix(HEADER)
            .and_then(|rest| rest.trim().strip_prefix("d="))
            .and_then(|d| d.parse().ok())
            .filter(|&d| d > 0)
            .ok_or_else(|| bad(n, format!("expected `{HEADER} d=<dim>`")))?;

        let mut read_table = |name: &str| -> Result<(IndexMap<Iri, usize>, Vec<F>), EbrError> {
            let (n, line) = next(name)?;
            let count: usize = line
                .strip_prefix(name)
                .and_then(|c| c.trim().parse().ok())
                .ok_or_else(|| bad(n, format!("expected `{name} <count>`")))?;
            let mut index = IndexMap::new();
            let mut data = Vec::with_capacity(count * dim);
            for _ in 0..count {
                let (n, line) = next("table row")?;
                let mut fields = line.split('\t');
                let iri = fields
                    .next()
                    .and_then(|s| Iri::new(s).ok())
                    .ok_or_else(|| bad(n, "invalid IRI".into()))?;
                let values = fields
                    .map(|f| f.parse::<f64>().ok().and_then(F::from))
                    .collect::<Option<Vec<F>>>()
                    .ok_or_else(|| bad(n, "invalid number".into()))?;
                if values.len() != dim {
                    return Err(bad(
                        n,
                        format!("expected {dim} values, found {}", values.len()),
                    ));
                }
                let id = index.len();
                if index.insert(iri, id).is_some() {
                    return Err(bad(n, "duplicate IRI".into()));
                }
                data.extend(values);
            }
            Ok((index, data))
        };
        let (entity_index, entities) = read_table("entities")?;
        let (relation_index, relations) = read_table("relations")?;
        Ok(EmbeddingModel {
            dim,
            entity_index,
            relation_index,
            entities,
            relations,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iri(s: &str) -> Iri {
        Iri::new(&format!("http://e.org/{s}")).unwrap()
    }

    fn sample() -> EmbeddingModel64 {
        let es = [iri("a"), iri("b")];
        let rs = [iri("r")];
        let mut m = EmbeddingModel64::zeros(3, &es, &rs);
        m.entity_mut(0).copy_from_slice(&[0.1, -0.25, 1e-17]);
        m.entity_mut(1)
            .copy_from_slice(&[2.0, 0.5, -0.3333333333333333]);
        m.relation_mut(0).copy_from_slice(&[1.0, 2.0, 3.0]);
        m
    }

    #[test]
    fn scoring() {
        let m = sample();
        let s = m.score(&iri("a"), &iri("r"), &iri("b")).unwrap();
        assert!((s - (0.2 - 0.25 - 1e-17)).abs() < 1e-12);
        assert!(matches!(
            m.score(&iri("zz"), &iri("r"), &iri("b")),
            Err(EbrError::UnknownSymbol(_))
        ));
    }

    #[test]
    fn stable_loss() {
        assert!((bce_with_logit(0.0f64, 1.0) - 2f64.ln()).abs() < 1e-15);
        assert!(bce_with_logit(1000.0f64, 0.0).is_finite());
        assert!(bce_with_logit(-1000.0f64, 1.0).is_finite());
        assert!((sigmoid(-1000.0f64)).abs() < 1e-300);
    }

    #[test]
    fn save_load_roundtrip() {
        let m = sample();
        let mut buf = Vec::new();
        m.save(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("EBR1 d=3\nentities 2\nhttp://e.org/a\t0.1\t-0.25\t"));
        let back = EmbeddingModel64::load(&buf[..]).unwrap();
        assert_eq!(back, m);

        let m32: EmbeddingModel32 = EmbeddingModel32::load(&buf[..]).unwrap();
        let mut buf32 = Vec::new();
        m32.save(&mut buf32).unwrap();
        assert_eq!(EmbeddingModel32::load(&buf32[..]).unwrap(), m32);
    }

    #[test]
    fn load_rejects_garbage() {
        assert!(EmbeddingModel64::load(&b"EBR2 d=3\n"[..]).is_err());
        assert!(EmbeddingModel64::load(&b"EBR1 d=2\nentities 1\nhttp://e.org/a\t1\n"[..]).is_err());
        assert!(EmbeddingModel64::load(&b"EBR1 d=1\nentities 0\n"[..]).is_err());
    }
}
