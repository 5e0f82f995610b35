use super::{read_documents, CorpusFormat, LabeledDoc};
use crate::rng::Rng;

/// 200 short movie-review style documents, labels `neg` / `pos`, balanced.
/// Equal to `synthetic_corpus(200, BUNDLED_SEED)`.
pub const BUNDLED_CORPUS_CSV: &str = include_str!("../../data/reviews_200.csv");
pub const BUNDLED_SEED: u64 = 7;

const NEUTRAL: &[&str] = &[
    "the", "movie", "film", "story", "plot", "actors", "scene", "scenes", "time", "watch", "watched",
    "character", "characters", "director", "ending", "music", "script", "it", "was", "is", "and", "a",
    "this", "with", "of", "cast", "camera", "minutes", "sequel", "audience", "screen", "dialogue",
    "theater", "version", "book", "studio", "really", "quite", "some", "two",
];

/// Word families; each draw picks one inflected form.
const POSITIVE: &[&[&str]] = &[
    &["great"],
    &["excellent"],
    &["wonderful", "wonderfully"],
    &["loved", "loving", "loves", "love"],
    &["enjoyed", "enjoying", "enjoys", "enjoyable"],
    &["brilliant", "brilliantly"],
    &["amazing", "amazed"],
    &["beautiful", "beautifully"],
    &["charming", "charmed"],
    &["delightful", "delighted"],
    &["recommend", "recommended", "recommending"],
    &["superb"],
    &["moving", "moved"],
    &["fun"],
];

const NEGATIVE: &[&[&str]] = &[
    &["boring", "bored", "bores"],
    &["awful"],
    &["terrible", "terribly"],
    &["hated", "hating", "hates", "hate"],
    &["dull"],
    &["poor", "poorly"],
    &["waste", "wasted", "wasting"],
    &["disappointing", "disappointed", "disappoints"],
    &["bad", "badly"],
    &["weak"],
    &["annoying", "annoyed"],
    &["predictable"],
    &["slow", "slowly"],
    &["mess", "messy"],
];

fn pick<'a>(rng: &mut Rng, items: &[&'a str]) -> &'a str {
    items[rng.index(items.len())]
}

/// Seeded generator for balanced two-class review-like text. Each document
/// has 6 to 14 words: about 55 % neutral filler, 30 % cues for its own class
/// and 15 % cues for the other class.
pub fn synthetic_corpus(n: usize, seed: u64) -> Vec<LabeledDoc> {
    let mut rng = Rng::new(seed);
    (0..n)
        .map(|i| {
            let positive = i % 2 == 1;
            let (own, other) = if positive { (POSITIVE, NEGATIVE) } else { (NEGATIVE, POSITIVE) };
            let len = 6 + rng.index(9);
            let words: Vec<&str> = (0..len)
                .map(|_| {
                    let u = rng.uniform();
                    if u < 0.55 {
                        pick(&mut rng, NEUTRAL)
                    } else if u < 0.85 {
                        let family = own[rng.index(own.len())];
                        pick(&mut rng, family)
                    } else {
                        let family = other[rng.index(other.len())];
                        pick(&mut rng, family)
                    }
                })
                .collect();
            let mut text = words.join(" ");
            if let Some(first) = text.get(0..1) {
                text.replace_range(0..1, &first.to_uppercase());
            }
            text.push(if rng.bernoulli(0.3) { '!' } else { '.' });
            LabeledDoc {
                id: format!("r{:03}", i + 1),
                text,
                label: if positive { "pos" } else { "neg" }.into(),
            }
        })
        .collect()
}

/// Parsed [`BUNDLED_CORPUS_CSV`].
pub fn bundled_corpus() -> Vec<LabeledDoc> {
    read_documents(BUNDLED_CORPUS_CSV.as_bytes(), CorpusFormat::Csv).expect("bundled corpus is well-formed")
}

pub fn docs_to_csv(docs: &[LabeledDoc]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for d in docs {
        w.serialize(d).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_file_matches_generator() {
        let generated = synthetic_corpus(200, BUNDLED_SEED);
        assert_eq!(bundled_corpus(), generated);
        assert_eq!(BUNDLED_CORPUS_CSV, docs_to_csv(&generated));
    }

    #[test]
    fn balanced_and_deterministic() {
        let docs = synthetic_corpus(50, 3);
        assert_eq!(docs.iter().filter(|d| d.label == "pos").count(), 25);
        assert_eq!(docs, synthetic_corpus(50, 3));
        assert_ne!(docs, synthetic_corpus(50, 4));
    }
}
