use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::model::{bce_with_logit, sigmoid, EmbeddingModel};
use super::{EbrError, EbrTriple};

/// Training hyperparameters. The loss is binary cross-entropy over
/// sigmoid scores; every positive triple is followed by `negatives`
/// corrupted copies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrainingConfig<F> {
    pub dim: usize,
    pub learning_rate: F,
    pub epochs: usize,
    pub negatives: usize,
    pub seed: u64,
}

pub type TrainingConfig64 = TrainingConfig<f64>;
pub type TrainingConfig32 = TrainingConfig<f32>;

impl<F: Float> Default for TrainingConfig<F> {
    fn default() -> Self {
        TrainingConfig {
            dim: 32,
            learning_rate: F::from(0.05).expect("representable"),
            epochs: 200,
            negatives: 5,
            seed: 0,
        }
    }
}

impl<F: Float> TrainingConfig<F> {
    fn validate(&self) -> Result<(), EbrError> {
        if self.dim == 0 {
            return Err(EbrError::InvalidConfig(
                "dimension must be at least 1".into(),
            ));
        }
        if self.learning_rate <= F::zero() || !self.learning_rate.is_finite() {
            return Err(EbrError::InvalidConfig(
                "learning rate must be positive".into(),
            ));
        }
        if self.negatives == 0 {
            return Err(EbrError::InvalidConfig(
                "at least one negative per positive is required".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct Trained<F> {
    pub model: EmbeddingModel<F>,
    /// Mean loss over all positive and negative examples, per epoch, each
    /// measured before the example's update.
    pub losses: Vec<F>,
}

/// Gradients of the loss with respect to `h`, `r` and `t`.
fn gradients<F: Float>(
    model: &EmbeddingModel<F>,
    h: usize,
    r: usize,
    t: usize,
    label: F,
) -> (F, Vec<F>, Vec<F>, Vec<F>) {
    let s = model.score_ids(h, r, t);
    let g = sigmoid(s) - label;
    let (hv, rv, tv) = (model.entity(h), model.relation(r), model.entity(t));
    let gh = (0..model.dim()).map(|i| g * rv[i] * tv[i]).collect();
    let gr = (0..model.dim()).map(|i| g * hv[i] * tv[i]).collect();
    let gt = (0..model.dim()).map(|i| g * hv[i] * rv[i]).collect();
    (bce_with_logit(s, label), gh, gr, gt)
}

fn sgd_step<F: Float>(
    model: &mut EmbeddingModel<F>,
    h: usize,
    r: usize,
    t: usize,
    label: F,
    lr: F,
) -> F {
    let (loss, gh, gr, gt) = gradients(model, h, r, t, label);
    for (v, g) in model.entity_mut(h).iter_mut().zip(&gh) {
        *v = *v - lr * *g;
    }
    for (v, g) in model.relation_mut(r).iter_mut().zip(&gr) {
        *v = *v - lr * *g;
    }
    for (v, g) in model.entity_mut(t).iter_mut().zip(&gt) {
        *v = *v - lr * *g;
    }
    loss
}

/// Trains a model with plain SGD, visiting triples in the given order each
/// epoch. Initialization and negative sampling draw from one ChaCha8 stream
/// seeded with `config.seed`, so equal inputs give bitwise-equal models.
pub fn train<F: Float>(
    triples: &[EbrTriple],
    config: &TrainingConfig<F>,
) -> Result<Trained<F>, EbrError> {
    config.validate()?;
    if triples.is_empty() {
        return Err(EbrError::EmptyTripleSet);
    }
    let mut model = EmbeddingModel::<F>::zeros(
        config.dim,
        triples.iter().flat_map(|t| [&t.head, &t.tail]),
        triples.iter().map(|t| &t.relation),
    );
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut init = |v: &mut F| *v = F::from(rng.gen_range(-0.1..=0.1f64)).expect("representable");
    model.entities.iter_mut().for_each(&mut init);
    model.relations.iter_mut().for_each(&mut init);

    let ids: Vec<(usize, usize, usize)> = triples
        .iter()
        .map(|t| {
            (
                model.entity_id(&t.head).expect("indexed"),
                model.relation_id(&t.relation).expect("indexed"),
                model.entity_id(&t.tail).expect("indexed"),
            )
        })
        .collect();
    let n = model.entity_count();
    let per_epoch = F::from(ids.len() * (1 + config.negatives)).expect("representable");
    let mut losses = Vec::with_capacity(config.epochs);
    for _ in 0..config.epochs {
        let mut total = F::zero();
        for &(h, r, t) in &ids {
            total = total + sgd_step(&mut model, h, r, t, F::one(), config.learning_rate);
            for _ in 0..config.negatives {
                let (nh, nt) = if rng.gen_bool(0.5) {
                    (rng.gen_range(0..n), t)
                } else {
                    (h, rng.gen_range(0..n))
                };
                total = total + sgd_step(&mut model, nh, r, nt, F::zero(), config.learning_rate);
            }
        }
        debug_assert!(model.is_finite());
        losses.push(total / per_epoch);
    }
    Ok(Trained { model, losses })
}

/// Largest relative error between the analytic loss gradient and central
/// finite differences with step `eps`, over every coordinate of the head,
/// relation and tail vectors. The relative error is
/// `|a - n| / max(|a|, |n|, 1e-6)`.
pub fn gradient_check<F: Float>(
    model: &EmbeddingModel<F>,
    triple: &EbrTriple,
    label: F,
    eps: F,
) -> Result<F, EbrError> {
    let lookup = |iri: &crate::model::Iri, id: Option<usize>| {
        id.ok_or_else(|| EbrError::UnknownSymbol(iri.clone()))
    };
    let h = lookup(&triple.head, model.entity_id(&triple.head))?;
    let r = lookup(&triple.relation, model.relation_id(&triple.relation))?;
    let t = lookup(&triple.tail, model.entity_id(&triple.tail))?;
    let (_, gh, gr, gt) = gradients(model, h, r, t, label);
    let floor = F::from(1e-6).expect("representable");
    let two = F::one() + F::one();
    let loss = |m: &EmbeddingModel<F>| bce_with_logit(m.score_ids(h, r, t), label);
    let mut worst = F::zero();
    let mut compare = |analytic: F, perturb: &dyn Fn(&mut EmbeddingModel<F>, F)| {
        let mut plus = model.clone();
        perturb(&mut plus, eps);
        let mut minus = model.clone();
        perturb(&mut minus, -eps);
        let numeric = (loss(&plus) - loss(&minus)) / (two * eps);
        let err = (analytic - numeric).abs() / analytic.abs().max(numeric.abs()).max(floor);
        worst = worst.max(err);
    };
    for i in 0..model.dim() {
        let mut a = gh[i];
        if t == h {
            a = a + gt[i];
        }
        compare(a, &|m, d| m.entity_mut(h)[i] = m.entity(h)[i] + d);
        compare(gr[i], &|m, d| m.relation_mut(r)[i] = m.relation(r)[i] + d);
        if t != h {
            compare(gt[i], &|m, d| m.entity_mut(t)[i] = m.entity(t)[i] + d);
        }
    }
    Ok(worst)
}
