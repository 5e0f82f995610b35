use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum PosTag {
    Noun,
    Verb,
    Adj,
    Adv,
    Pron,
    Det,
    Adp,
    Conj,
    Num,
    X,
}

impl PosTag {
    pub fn as_str(self) -> &'static str {
        match self {
            PosTag::Noun => "NOUN",
            PosTag::Verb => "VERB",
            PosTag::Adj => "ADJ",
            PosTag::Adv => "ADV",
            PosTag::Pron => "PRON",
            PosTag::Det => "DET",
            PosTag::Adp => "ADP",
            PosTag::Conj => "CONJ",
            PosTag::Num => "NUM",
            PosTag::X => "X",
        }
    }
}

impl fmt::Display for PosTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

const DET: &[&str] = &[
    "a", "an", "the", "this", "that", "these", "those", "each", "every", "some", "any", "no", "all",
    "both", "either", "neither", "another", "such",
];
const ADP: &[&str] = &[
    "about", "above", "across", "after", "against", "along", "among", "around", "at", "before",
    "behind", "below", "beneath", "beside", "between", "beyond", "by", "despite", "down", "during",
    "except", "for", "from", "in", "inside", "into", "near", "of", "off", "on", "onto", "out",
    "outside", "over", "past", "since", "through", "throughout", "to", "toward", "towards", "under",
    "until", "up", "upon", "with", "within", "without",
];
const PRON: &[&str] = &[
    "i", "me", "my", "mine", "myself", "you", "your", "yours", "yourself", "yourselves", "he", "him",
    "his", "himself", "she", "her", "hers", "herself", "it", "its", "itself", "we", "us", "our",
    "ours", "ourselves", "they", "them", "their", "theirs", "themselves", "who", "whom", "whose",
    "which", "what", "someone", "something", "anyone", "anything", "everyone", "everything",
    "nobody", "nothing",
];
const CONJ: &[&str] = &[
    "and", "but", "or", "nor", "so", "yet", "because", "although", "though", "while", "if", "unless",
    "whereas", "whether", "than",
];
const ADV: &[&str] = &[
    "not", "very", "too", "also", "just", "never", "always", "often", "here", "there", "now", "then",
    "again", "still", "already", "soon", "almost", "quite", "rather", "well",
];
const VERB: &[&str] = &[
    "be", "am", "is", "are", "was", "were", "been", "being", "have", "has", "had", "do", "does", "did",
    "will", "would", "shall", "should", "can", "cannot", "could", "may", "might", "must", "get",
    "got", "make", "made", "go", "went", "gone", "say", "said", "see", "saw", "seen", "know", "knew",
];
const NUM: &[&str] = &[
    "zero", "one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten", "eleven",
    "twelve", "hundred", "thousand", "million", "billion", "first", "second", "third",
];
const ADJ_SUFFIXES: &[&str] = &["ous", "ful", "ive", "able", "ible", "less", "ical", "ish"];

fn lexicon(word: &str) -> Option<PosTag> {
    [
        (DET, PosTag::Det),
        (PRON, PosTag::Pron),
        (CONJ, PosTag::Conj),
        (ADP, PosTag::Adp),
        (ADV, PosTag::Adv),
        (VERB, PosTag::Verb),
        (NUM, PosTag::Num),
    ]
    .into_iter()
    .find(|(list, _)| list.contains(&word))
    .map(|(_, tag)| tag)
}

fn suffix_rule(word: &str, prev: Option<PosTag>) -> PosTag {
    let long = word.chars().count() > 4;
    if long && word.ends_with("ly") {
        PosTag::Adv
    } else if long && (word.ends_with("ing") || word.ends_with("ed")) {
        PosTag::Verb
    } else if long && ADJ_SUFFIXES.iter().any(|s| word.ends_with(s)) {
        PosTag::Adj
    } else if word.ends_with('s') && !word.ends_with("ss") && prev == Some(PosTag::Pron) {
        PosTag::Verb
    } else {
        PosTag::Noun
    }
}

/// Rule-based tagger: closed-class lexicon first, then suffix heuristics,
/// defaulting to NOUN. Numerals are NUM; tokens with any character that is
/// neither alphabetic nor a digit are X.
pub fn pos_tag(tokens: &[String]) -> Vec<(String, PosTag)> {
    let mut prev = None;
    tokens
        .iter()
        .map(|tok| {
            let lower = tok.to_lowercase();
            let tag = if lower.is_empty() || !lower.chars().all(char::is_alphanumeric) {
                PosTag::X
            } else if lower.chars().all(|c| c.is_ascii_digit()) {
                PosTag::Num
            } else if let Some(tag) = lexicon(&lower) {
                tag
            } else {
                suffix_rule(&lower, prev)
            };
            prev = Some(tag);
            (tok.clone(), tag)
        })
        .collect()
}
