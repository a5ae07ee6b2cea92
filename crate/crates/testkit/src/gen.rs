//! Seeded random generators for vocabularies, class expressions and
//! ontologies. All randomness comes from the caller's RNG.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use owlkit::model::{
    vocab, AnnotationProperty, AnnotationValue, Atom, Axiom, Class, ClassExpression, DArgument,
    DataProperty, DataRange, Datatype, EntityKind, Facet, FacetRestriction, IArgument, Iri,
    Literal, NamedIndividual, ObjectProperty, ObjectPropertyExpression, OwlEntity, SwrlRule,
    Variable,
};
use owlkit::syntax::PrefixContext;
use owlkit::Ontology;

pub use rand::SeedableRng;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub const GEN_NS: &str = "http://example.org/gen#";

/// Entity names drawn on by the generators: `C0.., r0.., d0.., i0..`.
#[derive(Debug, Clone)]
pub struct Vocab {
    pub classes: Vec<Class>,
    pub object_properties: Vec<ObjectProperty>,
    pub data_properties: Vec<DataProperty>,
    pub individuals: Vec<NamedIndividual>,
}

fn iri(local: &str) -> Iri {
    Iri::new(&format!("{GEN_NS}{local}")).expect("valid IRI")
}

impl Vocab {
    pub fn new(
        classes: usize,
        object_properties: usize,
        data_properties: usize,
        individuals: usize,
    ) -> Vocab {
        Vocab {
            classes: (0..classes).map(|i| Class(iri(&format!("C{i}")))).collect(),
            object_properties: (0..object_properties)
                .map(|i| ObjectProperty(iri(&format!("r{i}"))))
                .collect(),
            data_properties: (0..data_properties)
                .map(|i| DataProperty(iri(&format!("d{i}"))))
                .collect(),
            individuals: (0..individuals)
                .map(|i| NamedIndividual(iri(&format!("i{i}"))))
                .collect(),
        }
    }

    /// Prefix context resolving the generator namespace as default and
    /// knowing the data properties.
    pub fn context(&self) -> PrefixContext {
        let mut ctx = PrefixContext::new(GEN_NS);
        for d in &self.data_properties {
            ctx.add_data_property(d);
        }
        ctx
    }
}

#[derive(Debug, Clone, Copy)]
pub struct CeOptions {
    pub max_depth: usize,
    /// Include data property restrictions.
    pub data: bool,
    pub max_cardinality: u32,
}

impl Default for CeOptions {
    fn default() -> Self {
        CeOptions {
            max_depth: 4,
            data: true,
            max_cardinality: 3,
        }
    }
}

fn pick<'a, T>(rng: &mut TestRng, items: &'a [T]) -> &'a T {
    items.choose(rng).expect("non-empty vocabulary")
}

pub fn property_expression(rng: &mut TestRng, vocab: &Vocab) -> ObjectPropertyExpression {
    let p = ObjectPropertyExpression::named(pick(rng, &vocab.object_properties).clone());
    if rng.gen_bool(0.2) {
        p.inverse()
    } else {
        p
    }
}

pub fn literal(rng: &mut TestRng) -> Literal {
    match rng.gen_range(0..10) {
        0..=4 => Literal::integer(rng.gen_range(-3..60)),
        5 => Literal::double(f64::from(rng.gen_range(-40i32..400)) / 4.0),
        6 => Literal::new(
            format!("{}.{}", rng.gen_range(0..100), rng.gen_range(0..10)),
            Iri::new(vocab::XSD_DECIMAL).unwrap(),
        )
        .expect("valid decimal"),
        7 => Literal::new(
            if rng.gen_bool(0.5) { "true" } else { "false" },
            Iri::new(vocab::XSD_BOOLEAN).unwrap(),
        )
        .expect("valid boolean"),
        _ => {
            let words = [
                "a",
                "Marie",
                "x y",
                "quote\"d",
                "back\\slash",
                "tab\there",
                "line\nbreak",
                "ünï",
                "",
            ];
            Literal::string(*pick(rng, &words))
        }
    }
}

pub fn data_range(rng: &mut TestRng) -> DataRange {
    match rng.gen_range(0..6) {
        0 => DataRange::Datatype(Datatype::xsd_integer()),
        1 => {
            let make = *pick(
                rng,
                &[
                    Datatype::xsd_string as fn() -> Datatype,
                    Datatype::xsd_double,
                    Datatype::rdfs_literal,
                ],
            );
            DataRange::Datatype(make())
        }
        2 | 3 => {
            let facets = [
                Facet::MinInclusive,
                Facet::MinExclusive,
                Facet::MaxInclusive,
                Facet::MaxExclusive,
            ];
            let n = rng.gen_range(1..=2);
            DataRange::DatatypeRestriction {
                base: Datatype::xsd_integer(),
                facets: (0..n)
                    .map(|_| FacetRestriction {
                        facet: *pick(rng, &facets),
                        value: Literal::integer(rng.gen_range(0..60)),
                    })
                    .collect(),
            }
        }
        _ => {
            let n = rng.gen_range(1..=3);
            DataRange::DataOneOf((0..n).map(|_| literal(rng)).collect())
        }
    }
}

fn leaf(rng: &mut TestRng, vocab: &Vocab, opts: &CeOptions) -> ClassExpression {
    let roll = rng.gen_range(0..20);
    match roll {
        0 => ClassExpression::thing(),
        1 => ClassExpression::nothing(),
        2 => {
            let n = rng.gen_range(1..=3);
            let mut inds: Vec<NamedIndividual> = (0..n)
                .map(|_| pick(rng, &vocab.individuals).clone())
                .collect();
            inds.dedup();
            ClassExpression::ObjectOneOf(inds)
        }
        3 => ClassExpression::has_value(
            property_expression(rng, vocab),
            pick(rng, &vocab.individuals).clone(),
        ),
        4 if opts.data => ClassExpression::DataHasValue {
            property: pick(rng, &vocab.data_properties).clone(),
            value: literal(rng),
        },
        5 if opts.data => ClassExpression::DataSomeValuesFrom {
            property: pick(rng, &vocab.data_properties).clone(),
            range: data_range(rng),
        },
        6 if opts.data => ClassExpression::DataAllValuesFrom {
            property: pick(rng, &vocab.data_properties).clone(),
            range: data_range(rng),
        },
        _ => pick(rng, &vocab.classes).clone().into(),
    }
}

/// A random valid class expression of depth at most `depth`.
pub fn class_expression(
    rng: &mut TestRng,
    vocab: &Vocab,
    depth: usize,
    opts: &CeOptions,
) -> ClassExpression {
    if depth == 0 || rng.gen_bool(0.25) {
        return leaf(rng, vocab, opts);
    }
    let sub = |rng: &mut TestRng| class_expression(rng, vocab, depth - 1, opts);
    match rng.gen_range(0..9) {
        0 | 1 => {
            let n = rng.gen_range(2..=3);
            ClassExpression::ObjectIntersectionOf((0..n).map(|_| sub(rng)).collect())
        }
        2 => {
            let n = rng.gen_range(2..=3);
            ClassExpression::ObjectUnionOf((0..n).map(|_| sub(rng)).collect())
        }
        3 => ClassExpression::complement(sub(rng)),
        4 => ClassExpression::some(property_expression(rng, vocab), sub(rng)),
        5 => ClassExpression::all(property_expression(rng, vocab), sub(rng)),
        _ => {
            let n = rng.gen_range(0..=opts.max_cardinality);
            let p = property_expression(rng, vocab);
            let filler = if rng.gen_bool(0.3) {
                ClassExpression::thing()
            } else {
                sub(rng)
            };
            match rng.gen_range(0..3) {
                0 => ClassExpression::min(n, p, filler),
                1 => ClassExpression::max(n, p, filler),
                _ => ClassExpression::exactly(n, p, filler),
            }
        }
    }
}

fn swrl_rule(rng: &mut TestRng, vocab: &Vocab) -> SwrlRule {
    let x = IArgument::Variable(Variable::named("x").unwrap());
    let y = IArgument::Variable(Variable::named("y").unwrap());
    let v = DArgument::Variable(Variable::named("v").unwrap());
    let mut body = vec![Atom::ObjectProperty {
        property: property_expression(rng, vocab),
        subject: x.clone(),
        object: y.clone(),
    }];
    if rng.gen_bool(0.5) {
        body.push(Atom::Class {
            class: pick(rng, &vocab.classes).clone().into(),
            arg: y.clone(),
        });
    }
    if rng.gen_bool(0.4) {
        body.push(Atom::DataProperty {
            property: pick(rng, &vocab.data_properties).clone(),
            subject: x.clone(),
            value: if rng.gen_bool(0.5) {
                v
            } else {
                DArgument::Literal(literal(rng))
            },
        });
    }
    let head = match rng.gen_range(0..3) {
        0 => Atom::Class {
            class: class_expression(
                rng,
                vocab,
                1,
                &CeOptions {
                    data: false,
                    ..Default::default()
                },
            ),
            arg: x,
        },
        1 => Atom::ObjectProperty {
            property: property_expression(rng, vocab),
            subject: y,
            object: IArgument::Individual(pick(rng, &vocab.individuals).clone()),
        },
        _ => Atom::Class {
            class: pick(rng, &vocab.classes).clone().into(),
            arg: y,
        },
    };
    SwrlRule::new(body, vec![head]).expect("head variables are bound in the body")
}

fn axiom(rng: &mut TestRng, vocab: &Vocab, depth: usize) -> Axiom {
    let opts = CeOptions {
        max_depth: depth,
        ..Default::default()
    };
    let ce = |rng: &mut TestRng| class_expression(rng, vocab, depth, &opts);
    let ind = |rng: &mut TestRng| pick(rng, &vocab.individuals).clone();
    let dp = |rng: &mut TestRng| pick(rng, &vocab.data_properties).clone();
    match rng.gen_range(0..16) {
        0 => {
            let kind = *pick(rng, &EntityKind::ALL);
            let local = match kind {
                EntityKind::Class => pick(rng, &vocab.classes).0.clone(),
                EntityKind::ObjectProperty => pick(rng, &vocab.object_properties).0.clone(),
                EntityKind::DataProperty => dp(rng).0,
                EntityKind::NamedIndividual => ind(rng).0,
                EntityKind::Datatype => iri("Celsius"),
                EntityKind::AnnotationProperty => iri("note"),
            };
            Axiom::Declaration(OwlEntity::new(kind, local))
        }
        1 => Axiom::SubClassOf {
            sub: ce(rng),
            sup: ce(rng),
        },
        2 => Axiom::EquivalentClasses((0..rng.gen_range(2..=3)).map(|_| ce(rng)).collect()),
        3 => Axiom::DisjointClasses((0..rng.gen_range(2..=3)).map(|_| ce(rng)).collect()),
        4 => Axiom::ClassAssertion {
            individual: ind(rng),
            class: ce(rng),
        },
        5 => Axiom::ObjectPropertyAssertion {
            subject: ind(rng),
            property: property_expression(rng, vocab),
            object: ind(rng),
        },
        6 => Axiom::DataPropertyAssertion {
            subject: ind(rng),
            property: dp(rng),
            value: literal(rng),
        },
        7 => Axiom::SubObjectPropertyOf {
            sub: property_expression(rng, vocab),
            sup: property_expression(rng, vocab),
        },
        8 => Axiom::InverseObjectProperties(
            property_expression(rng, vocab),
            property_expression(rng, vocab),
        ),
        9 => Axiom::ObjectPropertyDomain {
            property: property_expression(rng, vocab),
            domain: ce(rng),
        },
        10 => Axiom::ObjectPropertyRange {
            property: property_expression(rng, vocab),
            range: ce(rng),
        },
        11 => Axiom::FunctionalObjectProperty(property_expression(rng, vocab)),
        12 => Axiom::DataPropertyDomain {
            property: dp(rng),
            domain: ce(rng),
        },
        13 => Axiom::DataPropertyRange {
            property: dp(rng),
            range: data_range(rng),
        },
        14 => {
            let property = if rng.gen_bool(0.5) {
                AnnotationProperty(Iri::new(&format!("{}label", owlkit::model::ns::RDFS)).unwrap())
            } else {
                AnnotationProperty(iri("note"))
            };
            let subject = match rng.gen_range(0..3) {
                0 => pick(rng, &vocab.classes).0.clone(),
                1 => ind(rng).0,
                _ => Iri::new("urn:isbn:0451450523").unwrap(),
            };
            let value = if rng.gen_bool(0.7) {
                AnnotationValue::Literal(literal(rng))
            } else {
                AnnotationValue::Iri(iri("elsewhere"))
            };
            Axiom::AnnotationAssertion {
                subject,
                property,
                value,
            }
        }
        _ => Axiom::Rule(swrl_rule(rng, vocab)),
    }
}

/// A random ontology of at most `max_axioms` axioms covering every axiom
/// kind, with class expressions of depth at most `depth`.
pub fn ontology(rng: &mut TestRng, max_axioms: usize, depth: usize) -> Ontology {
    let vocab = Vocab::new(5, 3, 2, 6);
    let mut onto = if rng.gen_bool(0.8) {
        let mut o = Ontology::with_iri(
            Iri::new(&format!(
                "http://example.org/onto/{}",
                rng.gen_range(0..1000)
            ))
            .unwrap(),
        );
        if rng.gen_bool(0.3) {
            o.set_version_iri(Some(Iri::new("http://example.org/onto/v2").unwrap()));
        }
        o
    } else {
        Ontology::new()
    };
    if rng.gen_bool(0.3) {
        onto.add_import(Iri::new("http://example.org/imported").unwrap());
    }
    onto.prefixes_mut().insert("ex", GEN_NS);
    let n = rng.gen_range(0..=max_axioms);
    for _ in 0..n {
        onto.add_axiom(axiom(rng, &vocab, depth));
    }
    onto
}

#[derive(Debug, Clone, Copy)]
pub struct KbOptions {
    pub individuals: usize,
    pub classes: usize,
    pub object_properties: usize,
    pub data_properties: usize,
    /// Class and property hierarchy axioms.
    pub tbox: bool,
    /// Data property assertions.
    pub data: bool,
    /// Declare every individual; otherwise some occur only in assertions.
    pub declare_all: bool,
}

impl Default for KbOptions {
    fn default() -> Self {
        KbOptions {
            individuals: 30,
            classes: 5,
            object_properties: 3,
            data_properties: 2,
            tbox: true,
            data: true,
            declare_all: false,
        }
    }
}

/// A random knowledge base for retrieval tests together with its vocabulary.
pub fn knowledge_base(rng: &mut TestRng, opts: &KbOptions) -> (Ontology, Vocab) {
    let n = rng.gen_range(1..=opts.individuals.max(1));
    let vocab = Vocab::new(
        opts.classes,
        opts.object_properties,
        opts.data_properties,
        n,
    );
    let mut onto = Ontology::new();
    for i in &vocab.individuals {
        if opts.declare_all || rng.gen_bool(0.8) {
            onto.add_axiom(Axiom::declaration(i.clone()));
        }
    }
    for i in &vocab.individuals {
        for _ in 0..rng.gen_range(0..=2) {
            onto.add_axiom(Axiom::class_assertion(
                i.clone(),
                pick(rng, &vocab.classes).clone(),
            ));
        }
        for _ in 0..rng.gen_range(0..=3) {
            let p = if opts.tbox {
                property_expression(rng, &vocab)
            } else {
                pick(rng, &vocab.object_properties).clone().into()
            };
            onto.add_axiom(Axiom::object_property_assertion(
                p,
                i.clone(),
                pick(rng, &vocab.individuals).clone(),
            ));
        }
        if opts.data {
            for _ in 0..rng.gen_range(0..=2) {
                onto.add_axiom(Axiom::DataPropertyAssertion {
                    subject: i.clone(),
                    property: pick(rng, &vocab.data_properties).clone(),
                    value: literal(rng),
                });
            }
        }
    }
    if opts.tbox {
        for _ in 0..rng.gen_range(0..=6) {
            let a = pick(rng, &vocab.classes).clone();
            let b = pick(rng, &vocab.classes).clone();
            onto.add_axiom(match rng.gen_range(0..5) {
                0 => Axiom::EquivalentClasses(vec![a.into(), b.into()]),
                1 => Axiom::sub_class_of(
                    a,
                    ClassExpression::some(pick(rng, &vocab.object_properties).clone(), b.into()),
                ),
                _ => Axiom::sub_class_of(a, b),
            });
        }
        for _ in 0..rng.gen_range(0..=3) {
            let a = property_expression(rng, &vocab);
            let b = property_expression(rng, &vocab);
            onto.add_axiom(if rng.gen_bool(0.5) {
                Axiom::SubObjectPropertyOf { sub: a, sup: b }
            } else {
                Axiom::InverseObjectProperties(a, b)
            });
        }
        if rng.gen_bool(0.3) {
            onto.add_axiom(Axiom::class_assertion(
                pick(rng, &vocab.individuals).clone(),
                ClassExpression::complement(pick(rng, &vocab.classes).clone().into()),
            ));
        }
    }
    (onto, vocab)
}
