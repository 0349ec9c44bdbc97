//! Continuous bag-of-words embeddings trained with negative sampling.
//!
//! For each position the context vector `h` is the mean of the input vectors
//! of the tokens within `window` positions on either side. The loss for the
//! target `w` with negative samples `n_1..n_k` is
//!
//! ```text
//! -log σ(u_w · h) - Σ_j log σ(-u_{n_j} · h)
//! ```
//!
//! where `u` are the output vectors. Negatives are drawn from the unigram
//! distribution raised to the 3/4 power. Training is single-threaded and
//! bit-reproducible for a given seed.

use std::collections::HashMap;
use std::io::{BufRead, Write};

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct EmbedConfig {
    pub dim: usize,
    /// Tokens on each side of the target that form its context.
    pub window: usize,
    pub min_count: u64,
    pub negatives: usize,
    pub epochs: usize,
    /// Initial step size, decayed linearly towards zero over training.
    pub learning_rate: f64,
    pub seed: u64,
}

impl Default for EmbedConfig {
    /// Desk-scale settings: 16 dimensions, 15 epochs.
    fn default() -> Self {
        EmbedConfig {
            dim: 16,
            window: 5,
            min_count: 10,
            negatives: 5,
            epochs: 15,
            learning_rate: 0.05,
            seed: 1,
        }
    }
}

impl EmbedConfig {
    /// 400 dimensions, a five-token window and a minimum count of 10.
    pub fn full_scale() -> Self {
        EmbedConfig {
            dim: 400,
            epochs: 5,
            learning_rate: 0.025,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::InvalidConfig("dim must be at least 1"));
        }
        if self.window == 0 {
            return Err(Error::InvalidConfig("window must be at least 1"));
        }
        if self.min_count == 0 {
            return Err(Error::InvalidConfig("min_count must be at least 1"));
        }
        if !(self.learning_rate > 0.0 && self.learning_rate.is_finite()) {
            return Err(Error::InvalidConfig("learning_rate must be positive"));
        }
        Ok(())
    }
}

/// Token inventory, most frequent first.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Vocab {
    tokens: Vec<String>,
    counts: Vec<u64>,
    index: HashMap<String, usize>,
}

impl Vocab {
    fn from_sorted(entries: Vec<(String, u64)>) -> Self {
        let mut vocab = Vocab::default();
        for (i, (tok, count)) in entries.into_iter().enumerate() {
            vocab.index.insert(tok.clone(), i);
            vocab.tokens.push(tok);
            vocab.counts.push(count);
        }
        vocab
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn index_of(&self, token: &str) -> Option<usize> {
        self.index.get(token).copied()
    }

    pub fn token(&self, idx: usize) -> &str {
        &self.tokens[idx]
    }

    pub fn count(&self, idx: usize) -> u64 {
        self.counts[idx]
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }
}

/// Counts tokens and keeps those seen at least `min_count` times, ordered by
/// descending frequency with ties broken lexicographically.
pub fn build_vocab<I, S>(tokens: I, min_count: u64) -> Result<Vocab>
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    let mut counts: HashMap<String, u64> = HashMap::new();
    for tok in tokens {
        let tok = tok.as_ref();
        match counts.get_mut(tok) {
            Some(c) => *c += 1,
            None => {
                counts.insert(tok.to_string(), 1);
            }
        }
    }
    let mut kept: Vec<(String, u64)> = counts
        .into_iter()
        .filter(|&(_, c)| c >= min_count)
        .collect();
    if kept.is_empty() {
        return Err(Error::EmptyVocab(min_count as usize));
    }
    kept.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    Ok(Vocab::from_sorted(kept))
}

/// One CBOW training example, as vocabulary indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CbowExample {
    pub target: usize,
    pub context: Vec<usize>,
    pub negatives: Vec<usize>,
}

/// Loss and sparse gradients of one example.
#[derive(Debug, Clone)]
pub struct CbowGradient {
    pub loss: f64,
    /// `(row, d loss / d input_row)`, one entry per context position.
    pub input: Vec<(usize, Vec<f64>)>,
    /// `(row, d loss / d output_row)`, target first, then each negative.
    pub output: Vec<(usize, Vec<f64>)>,
}

fn sigmoid(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}

/// `-log σ(x)`, stable for large |x|.
fn neg_log_sigmoid(x: f64) -> f64 {
    if x >= 0.0 {
        (-x).exp().ln_1p()
    } else {
        -x + x.exp().ln_1p()
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Input and output vector tables, row-major `|V| × dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct Parameters {
    pub dim: usize,
    pub input: Vec<f64>,
    pub output: Vec<f64>,
}

impl Parameters {
    pub fn zeros(rows: usize, dim: usize) -> Self {
        Parameters {
            dim,
            input: vec![0.0; rows * dim],
            output: vec![0.0; rows * dim],
        }
    }

    pub fn rows(&self) -> usize {
        self.input.len() / self.dim
    }

    pub fn input_row(&self, i: usize) -> &[f64] {
        &self.input[i * self.dim..(i + 1) * self.dim]
    }

    pub fn output_row(&self, i: usize) -> &[f64] {
        &self.output[i * self.dim..(i + 1) * self.dim]
    }

    fn context_mean(&self, context: &[usize]) -> Vec<f64> {
        let mut h = vec![0.0; self.dim];
        for &c in context {
            for (acc, v) in h.iter_mut().zip(self.input_row(c)) {
                *acc += v;
            }
        }
        let inv = 1.0 / context.len() as f64;
        h.iter_mut().for_each(|v| *v *= inv);
        h
    }

    pub fn loss(&self, ex: &CbowExample) -> f64 {
        let h = self.context_mean(&ex.context);
        let mut loss = neg_log_sigmoid(dot(self.output_row(ex.target), &h));
        for &n in &ex.negatives {
            loss += neg_log_sigmoid(-dot(self.output_row(n), &h));
        }
        loss
    }

    pub fn gradient(&self, ex: &CbowExample) -> CbowGradient {
        let h = self.context_mean(&ex.context);
        let mut grad_h = vec![0.0; self.dim];
        let mut output = Vec::with_capacity(1 + ex.negatives.len());

        let score = dot(self.output_row(ex.target), &h);
        let mut loss = neg_log_sigmoid(score);
        let g = sigmoid(score) - 1.0;
        for (gh, u) in grad_h.iter_mut().zip(self.output_row(ex.target)) {
            *gh += g * u;
        }
        output.push((ex.target, h.iter().map(|v| g * v).collect()));

        for &n in &ex.negatives {
            let score = dot(self.output_row(n), &h);
            loss += neg_log_sigmoid(-score);
            let g = sigmoid(score);
            for (gh, u) in grad_h.iter_mut().zip(self.output_row(n)) {
                *gh += g * u;
            }
            output.push((n, h.iter().map(|v| g * v).collect()));
        }

        let inv = 1.0 / ex.context.len() as f64;
        let per_row: Vec<f64> = grad_h.iter().map(|v| v * inv).collect();
        let input = ex.context.iter().map(|&c| (c, per_row.clone())).collect();
        CbowGradient {
            loss,
            input,
            output,
        }
    }

    /// Applies one SGD step for `ex`; returns the loss before the update.
    pub fn sgd_step(&mut self, ex: &CbowExample, lr: f64) -> f64 {
        let grad = self.gradient(ex);
        let dim = self.dim;
        for (row, g) in &grad.output {
            let dst = &mut self.output[row * dim..(row + 1) * dim];
            dst.iter_mut().zip(g).for_each(|(p, d)| *p -= lr * d);
        }
        for (row, g) in &grad.input {
            let dst = &mut self.input[row * dim..(row + 1) * dim];
            dst.iter_mut().zip(g).for_each(|(p, d)| *p -= lr * d);
        }
        grad.loss
    }
}

/// Trained vectors plus the vocabulary and configuration that produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingModel {
    pub vocab: Vocab,
    pub params: Parameters,
    pub config: EmbedConfig,
    /// Mean loss per epoch.
    pub loss_history: Vec<f64>,
}

/// Trains CBOW vectors on a corpus of token lists.
pub fn train_cbow<S: AsRef<str>>(
    corpus: &[Vec<S>],
    config: &EmbedConfig,
) -> Result<EmbeddingModel> {
    config.validate()?;
    let vocab = build_vocab(corpus.iter().flatten(), config.min_count)?;
    let sentences: Vec<Vec<usize>> = corpus
        .iter()
        .map(|s| {
            s.iter()
                .filter_map(|t| vocab.index_of(t.as_ref()))
                .collect()
        })
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let dim = config.dim;
    let mut params = Parameters::zeros(vocab.len(), dim);
    let scale = 0.5 / dim as f64;
    for v in params.input.iter_mut() {
        *v = rng.random_range(-scale..scale);
    }

    let weights: Vec<f64> = vocab
        .counts
        .iter()
        .map(|&c| (c as f64).powf(0.75))
        .collect();
    let noise = WeightedIndex::new(&weights).expect("vocab counts are positive");

    let words_per_epoch: usize = sentences.iter().map(Vec::len).sum();
    let total_steps = (words_per_epoch * config.epochs).max(1) as f64;
    let min_lr = config.learning_rate * 1e-4;

    let mut step = 0usize;
    let mut loss_history = Vec::with_capacity(config.epochs);
    let mut ex = CbowExample {
        target: 0,
        context: Vec::with_capacity(2 * config.window),
        negatives: Vec::with_capacity(config.negatives),
    };
    for epoch in 0..config.epochs {
        let mut epoch_loss = 0.0;
        let mut examples = 0usize;
        for sent in &sentences {
            for (pos, &target) in sent.iter().enumerate() {
                let lr = (config.learning_rate * (1.0 - step as f64 / total_steps)).max(min_lr);
                step += 1;

                let lo = pos.saturating_sub(config.window);
                let hi = (pos + config.window + 1).min(sent.len());
                ex.context.clear();
                ex.context
                    .extend((lo..hi).filter(|&j| j != pos).map(|j| sent[j]));
                if ex.context.is_empty() {
                    continue;
                }
                ex.target = target;
                ex.negatives.clear();
                for _ in 0..config.negatives {
                    let n = noise.sample(&mut rng);
                    if n != target {
                        ex.negatives.push(n);
                    }
                }

                let loss = params.sgd_step(&ex, lr);
                if !loss.is_finite() {
                    return Err(Error::NonFiniteLoss { epoch, step });
                }
                epoch_loss += loss;
                examples += 1;
            }
        }
        loss_history.push(if examples > 0 {
            epoch_loss / examples as f64
        } else {
            0.0
        });
    }

    Ok(EmbeddingModel {
        vocab,
        params,
        config: config.clone(),
        loss_history,
    })
}

/// Cosine of the angle between two vectors, clamped to [-1, 1].
pub fn cosine_similarity(a: &[f64], b: &[f64]) -> Result<f64> {
    let na = dot(a, a).sqrt();
    let nb = dot(b, b).sqrt();
    if na == 0.0 || nb == 0.0 {
        return Err(Error::ZeroVector);
    }
    Ok((dot(a, b) / (na * nb)).clamp(-1.0, 1.0))
}

impl EmbeddingModel {
    pub fn vector(&self, token: &str) -> Option<&[f64]> {
        self.vocab.index_of(token).map(|i| self.params.input_row(i))
    }

    pub fn similarity(&self, a: &str, b: &str) -> Result<f64> {
        let va = self
            .vector(a)
            .ok_or_else(|| Error::OutOfVocabulary(a.to_string()))?;
        let vb = self
            .vector(b)
            .ok_or_else(|| Error::OutOfVocabulary(b.to_string()))?;
        cosine_similarity(va, vb)
    }

    /// The `k` tokens most similar to `token`, best first. Ties go to the
    /// lower vocabulary index.
    pub fn nearest(&self, token: &str, k: usize) -> Result<Vec<(String, f64)>> {
        let q = self
            .vocab
            .index_of(token)
            .ok_or_else(|| Error::OutOfVocabulary(token.to_string()))?;
        let query = self.params.input_row(q);
        if dot(query, query) == 0.0 {
            return Err(Error::ZeroVector);
        }
        let mut scored: Vec<(usize, f64)> = (0..self.vocab.len())
            .filter(|&i| i != q)
            .map(|i| {
                let sim = cosine_similarity(query, self.params.input_row(i)).unwrap_or(0.0);
                (i, sim)
            })
            .collect();
        scored.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
        Ok(scored
            .into_iter()
            .take(k)
            .map(|(i, s)| (self.vocab.token(i).to_string(), s))
            .collect())
    }

    /// Writes `dim vocab_size`, then `token frequency v_1 .. v_dim` per line.
    /// Only input vectors are stored.
    pub fn save<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "{} {}", self.params.dim, self.vocab.len())?;
        for i in 0..self.vocab.len() {
            write!(out, "{} {}", self.vocab.token(i), self.vocab.count(i))?;
            for v in self.params.input_row(i) {
                write!(out, " {v}")?;
            }
            writeln!(out)?;
        }
        Ok(())
    }

    /// Reads a model written by [`EmbeddingModel::save`]. Output vectors come
    /// back as zeros and the config keeps defaults apart from `dim`.
    pub fn load<R: BufRead>(input: R) -> Result<Self> {
        let bad = |line: usize, message: &str| Error::ModelFormat {
            line,
            message: message.to_string(),
        };
        let mut lines = input.lines().enumerate();
        let header = match lines.next() {
            Some((_, Ok(h))) => h,
            _ => return Err(bad(1, "missing header")),
        };
        let mut parts = header.split_ascii_whitespace();
        let (Some(dim), Some(size), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(bad(1, "expected `dim vocab_size`"));
        };
        let dim: usize = dim.parse().map_err(|_| bad(1, "bad dim"))?;
        let size: usize = size.parse().map_err(|_| bad(1, "bad vocab size"))?;
        if dim == 0 {
            return Err(bad(1, "dim must be positive"));
        }

        let mut entries = Vec::with_capacity(size);
        let mut input_vecs = Vec::with_capacity(size * dim);
        for (idx, line) in lines {
            let line_no = idx + 1;
            let line = line.map_err(|e| bad(line_no, &e.to_string()))?;
            if line.is_empty() {
                continue;
            }
            let mut fields = line.split(' ');
            let token = fields.next().unwrap_or_default().to_string();
            let count: u64 = fields
                .next()
                .and_then(|f| f.parse().ok())
                .ok_or_else(|| bad(line_no, "bad frequency"))?;
            let before = input_vecs.len();
            for f in fields {
                input_vecs.push(f.parse::<f64>().map_err(|_| bad(line_no, "bad float"))?);
            }
            if input_vecs.len() - before != dim || token.is_empty() {
                return Err(bad(line_no, "wrong number of fields"));
            }
            entries.push((token, count));
        }
        if entries.len() != size {
            return Err(bad(1, "vocab size does not match row count"));
        }

        let vocab = Vocab::from_sorted(entries);
        if vocab.len() != size {
            return Err(bad(1, "duplicate tokens"));
        }
        let output = vec![0.0; input_vecs.len()];
        Ok(EmbeddingModel {
            vocab,
            params: Parameters {
                dim,
                input: input_vecs,
                output,
            },
            config: EmbedConfig {
                dim,
                ..EmbedConfig::default()
            },
            loss_history: Vec::new(),
        })
    }
}
