use std::collections::HashMap;

/// Multiset Jaccard similarity of the characters of two strings. Two empty
/// strings score 1.
pub fn char_jaccard(predicted: &str, truth: &str) -> f64 {
    let mut counts: HashMap<char, (usize, usize)> = HashMap::new();
    for c in predicted.chars() {
        counts.entry(c).or_default().0 += 1;
    }
    for c in truth.chars() {
        counts.entry(c).or_default().1 += 1;
    }
    let (inter, union) = counts
        .values()
        .fold((0, 0), |(i, u), &(a, b)| (i + a.min(b), u + a.max(b)));
    if union == 0 {
        1.0
    } else {
        inter as f64 / union as f64
    }
}

/// Unit-cost edit distance over characters.
pub fn levenshtein(predicted: &str, truth: &str) -> usize {
    let a: Vec<char> = predicted.chars().collect();
    let b: Vec<char> = truth.chars().collect();
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    let mut cur = vec![0; b.len() + 1];
    for (i, ca) in a.iter().enumerate() {
        cur[0] = i + 1;
        for (j, cb) in b.iter().enumerate() {
            let sub = prev[j] + usize::from(ca != cb);
            cur[j + 1] = sub.min(prev[j + 1] + 1).min(cur[j] + 1);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}
