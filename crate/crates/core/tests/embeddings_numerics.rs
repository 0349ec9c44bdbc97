use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use skintone::embeddings::{CbowExample, Parameters};
use skintone::generate::marker_corpus;
use skintone::{train_cbow, EmbedConfig};

fn random_params(rng: &mut impl Rng, rows: usize, dim: usize) -> Parameters {
    let mut p = Parameters::zeros(rows, dim);
    p.input
        .iter_mut()
        .for_each(|v| *v = rng.random_range(-1.0..1.0));
    p.output
        .iter_mut()
        .for_each(|v| *v = rng.random_range(-1.0..1.0));
    p
}

fn random_example(rng: &mut impl Rng, rows: usize) -> CbowExample {
    CbowExample {
        target: rng.random_range(0..rows),
        context: (0..rng.random_range(1..6))
            .map(|_| rng.random_range(0..rows))
            .collect(),
        negatives: (0..rng.random_range(1..6))
            .map(|_| rng.random_range(0..rows))
            .collect(),
    }
}

/// Worst relative error between the analytic gradient and central
/// differences over all parameters.
fn gradient_error(p: &Parameters, ex: &CbowExample, h: f64) -> f64 {
    let g = p.gradient(ex);
    let mut dense_in = vec![0.0; p.input.len()];
    let mut dense_out = vec![0.0; p.output.len()];
    for (row, v) in &g.input {
        for (k, d) in v.iter().enumerate() {
            dense_in[row * p.dim + k] += d;
        }
    }
    for (row, v) in &g.output {
        for (k, d) in v.iter().enumerate() {
            dense_out[row * p.dim + k] += d;
        }
    }
    assert!((g.loss - p.loss(ex)).abs() < 1e-12);

    let mut num = 0.0;
    let mut den = 0.0;
    for which in 0..2 {
        let len = p.input.len();
        for i in 0..len {
            let mut plus = p.clone();
            let mut minus = p.clone();
            let (a, b) = if which == 0 {
                (&mut plus.input[i], &mut minus.input[i])
            } else {
                (&mut plus.output[i], &mut minus.output[i])
            };
            *a += h;
            *b -= h;
            let fd = (plus.loss(ex) - minus.loss(ex)) / (2.0 * h);
            let an = if which == 0 {
                dense_in[i]
            } else {
                dense_out[i]
            };
            num += (fd - an) * (fd - an);
            den += fd * fd + an * an;
        }
    }
    if den == 0.0 {
        0.0
    } else {
        (num / den).sqrt()
    }
}

#[test]
fn gradient_matches_finite_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for draw in 0..100 {
        let dim = rng.random_range(1..=8);
        let rows = rng.random_range(2..10);
        let p = random_params(&mut rng, rows, dim);
        let ex = random_example(&mut rng, rows);
        let err = gradient_error(&p, &ex, 1e-5);
        assert!(err < 1e-4, "draw {draw}: relative error {err}");
    }
}

#[test]
fn co_occurring_tokens_end_up_closer() {
    // x and y always share contexts; z lives in disjoint ones
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let left = ["a", "b", "c", "d"];
    let right = ["p", "q", "r", "s"];
    let mut corpus = Vec::new();
    for _ in 0..600 {
        let w =
            |rng: &mut ChaCha8Rng, set: &[&str]| set[rng.random_range(0..set.len())].to_string();
        let xy = if rng.random_bool(0.5) { "x" } else { "y" };
        corpus.push(vec![
            w(&mut rng, &left),
            w(&mut rng, &left),
            xy.to_string(),
            w(&mut rng, &left),
            w(&mut rng, &left),
        ]);
        corpus.push(vec![
            w(&mut rng, &right),
            w(&mut rng, &right),
            "z".to_string(),
            w(&mut rng, &right),
            w(&mut rng, &right),
        ]);
    }
    for seed in 1..=5 {
        let cfg = EmbedConfig {
            dim: 8,
            window: 2,
            min_count: 1,
            epochs: 10,
            seed,
            ..EmbedConfig::default()
        };
        let m = train_cbow(&corpus, &cfg).unwrap();
        let xy = m.similarity("x", "y").unwrap();
        let xz = m.similarity("x", "z").unwrap();
        assert!(xy > xz, "seed {seed}: cos(x,y)={xy} cos(x,z)={xz}");
    }
}

#[test]
fn nearest_matches_exhaustive_scan() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let vocab: Vec<String> = (0..100).map(|i| format!("w{i}")).collect();
    let corpus: Vec<Vec<String>> = (0..300)
        .map(|_| {
            (0..8)
                .map(|_| vocab[rng.random_range(0..100)].clone())
                .collect()
        })
        .collect();
    let cfg = EmbedConfig {
        dim: 6,
        min_count: 1,
        epochs: 2,
        ..EmbedConfig::default()
    };
    let m = train_cbow(&corpus, &cfg).unwrap();
    assert_eq!(m.vocab.len(), 100);
    for probe in ["w0", "w17", "w99"] {
        let q = m.vector(probe).unwrap();
        let mut all: Vec<(usize, f64)> = (0..m.vocab.len())
            .filter(|&i| m.vocab.token(i) != probe)
            .map(|i| {
                let v = m.params.input_row(i);
                let dot: f64 = q.iter().zip(v).map(|(a, b)| a * b).sum();
                let nq: f64 = q.iter().map(|a| a * a).sum::<f64>().sqrt();
                let nv: f64 = v.iter().map(|a| a * a).sum::<f64>().sqrt();
                (i, dot / (nq * nv))
            })
            .collect();
        all.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
        let got = m.nearest(probe, 10).unwrap();
        for ((tok, sim), (i, want)) in got.iter().zip(&all) {
            assert_eq!(tok, m.vocab.token(*i));
            assert!((sim - want).abs() < 1e-12);
        }
    }
}

#[test]
fn markers_cluster_together() {
    let mut passing = 0;
    for seed in 1..=5 {
        let corpus = marker_corpus(2000, seed);
        let cfg = EmbedConfig {
            seed,
            ..EmbedConfig::default()
        };
        let m = train_cbow(&corpus.sentences, &cfg).unwrap();
        let ok = corpus.markers.iter().all(|marker| {
            let ranked = m.nearest(marker, m.vocab.len() - 1).unwrap();
            let first_base = ranked
                .iter()
                .position(|(t, _)| corpus.bases.contains(t))
                .unwrap_or(ranked.len());
            let last_marker = ranked
                .iter()
                .rposition(|(t, _)| corpus.markers.contains(t))
                .unwrap();
            last_marker < first_base
        });
        passing += usize::from(ok);
    }
    assert!(passing >= 4, "{passing} of 5 seeds");
}
