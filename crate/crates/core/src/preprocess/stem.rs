//! Suffix-stripping stemmer (Porter-class rules).
//!
//! Classic measure-based suffix rules plus a comparative/superlative step so
//! that `cleaner` and `cleanest` reduce to `clean` like `cleaned` does. The
//! whole pass repeats until the word stops changing, which makes `stem`
//! idempotent; every consumer (ontology synonyms, lexicons, weight files)
//! normalizes through the same function, so lookups stay consistent even
//! where the reduced forms look unusual.

/// Stems a single word to its lowercase root.
///
/// Words of length <= 2 or containing non-alphabetic characters (numbers,
/// hyphenated names, joined phrases like `a_lot`) are only lowercased.
pub fn stem(word: &str) -> String {
    let lower = word.to_lowercase();
    if lower.len() <= 2 || !lower.bytes().all(|b| b.is_ascii_lowercase()) {
        return lower;
    }
    let mut current = lower.into_bytes();
    for _ in 0..8 {
        let next = single_pass(&current);
        if next == current {
            break;
        }
        current = next;
    }
    String::from_utf8(current).expect("stemmer operates on ascii")
}

fn single_pass(word: &[u8]) -> Vec<u8> {
    let mut w = word.to_vec();
    step_1a(&mut w);
    step_1b(&mut w);
    step_1d(&mut w);
    step_1c(&mut w);
    step_2(&mut w);
    step_3(&mut w);
    step_4(&mut w);
    step_5a(&mut w);
    step_5b(&mut w);
    w
}

fn is_consonant(w: &[u8], i: usize) -> bool {
    match w[i] {
        b'a' | b'e' | b'i' | b'o' | b'u' => false,
        b'y' => i == 0 || !is_consonant(w, i - 1),
        _ => true,
    }
}

/// Number of vowel-consonant transitions: m in the [C](VC)^m[V] form.
fn measure(w: &[u8]) -> usize {
    let mut m = 0;
    let mut prev_vowel = false;
    for i in 0..w.len() {
        let cons = is_consonant(w, i);
        if prev_vowel && cons {
            m += 1;
        }
        prev_vowel = !cons;
    }
    m
}

fn has_vowel(w: &[u8]) -> bool {
    (0..w.len()).any(|i| !is_consonant(w, i))
}

fn ends_double_consonant(w: &[u8]) -> bool {
    w.len() >= 2 && w[w.len() - 1] == w[w.len() - 2] && is_consonant(w, w.len() - 1)
}

/// cvc at the end, where the final consonant is not w, x, or y.
fn ends_cvc(w: &[u8]) -> bool {
    if w.len() < 3 {
        return false;
    }
    let n = w.len();
    is_consonant(w, n - 3)
        && !is_consonant(w, n - 2)
        && is_consonant(w, n - 1)
        && !matches!(w[n - 1], b'w' | b'x' | b'y')
}

fn ends_with(w: &[u8], suffix: &str) -> bool {
    w.len() > suffix.len() && w.ends_with(suffix.as_bytes())
}

fn step_1a(w: &mut Vec<u8>) {
    if w.last() != Some(&b's') {
        return;
    }
    if w.ends_with(b"sses") || w.ends_with(b"ies") {
        w.truncate(w.len() - 2);
    } else if w[w.len() - 2] != b's' {
        w.pop();
    }
}

fn step_1b(w: &mut Vec<u8>) {
    if ends_with(w, "eed") {
        if measure(&w[..w.len() - 3]) > 0 {
            w.pop();
        }
        return;
    }
    let stripped = if ends_with(w, "ed") && has_vowel(&w[..w.len() - 2]) {
        w.truncate(w.len() - 2);
        true
    } else if ends_with(w, "ing") && has_vowel(&w[..w.len() - 3]) {
        w.truncate(w.len() - 3);
        true
    } else {
        false
    };
    if stripped {
        post_strip_cleanup(w);
    }
}

/// Shared cleanup after removing ed/ing/er/est: restore a final e for at/bl/iz
/// stems, undouble trailing consonants, or re-add e after a short cvc stem.
fn post_strip_cleanup(w: &mut Vec<u8>) {
    if w.ends_with(b"at") || w.ends_with(b"bl") || w.ends_with(b"iz") {
        w.push(b'e');
    } else if ends_double_consonant(w) && !matches!(w[w.len() - 1], b'l' | b's' | b'z') {
        w.pop();
    } else if measure(w) == 1 && ends_cvc(w) {
        w.push(b'e');
    }
}

fn step_1c(w: &mut [u8]) {
    if w.last() == Some(&b'y') && has_vowel(&w[..w.len() - 1]) {
        let n = w.len();
        w[n - 1] = b'i';
    }
}

/// Comparative/superlative endings: quickest -> quick, cleaner -> clean.
fn step_1d(w: &mut Vec<u8>) {
    for suffix in ["est", "er"] {
        if ends_with(w, suffix) {
            let stem_len = w.len() - suffix.len();
            if stem_len >= 3 && has_vowel(&w[..stem_len]) {
                w.truncate(stem_len);
                post_strip_cleanup(w);
            }
            return;
        }
    }
}

/// Applies the first (longest) matching rewrite whose stem measure passes.
fn apply_rules(w: &mut Vec<u8>, rules: &[(&str, &str)], min_measure: usize) {
    for (suffix, replacement) in rules {
        if ends_with(w, suffix) {
            let stem_len = w.len() - suffix.len();
            if measure(&w[..stem_len]) > min_measure {
                w.truncate(stem_len);
                w.extend_from_slice(replacement.as_bytes());
            }
            return;
        }
    }
}

fn step_2(w: &mut Vec<u8>) {
    // Ordered longest-first so e.g. "ational" wins over "tional".
    const RULES: &[(&str, &str)] = &[
        ("ational", "ate"),
        ("ization", "ize"),
        ("iveness", "ive"),
        ("fulness", "ful"),
        ("ousness", "ous"),
        ("biliti", "ble"),
        ("tional", "tion"),
        ("ation", "ate"),
        ("alism", "al"),
        ("aliti", "al"),
        ("iviti", "ive"),
        ("ousli", "ous"),
        ("entli", "ent"),
        ("enci", "ence"),
        ("anci", "ance"),
        ("izer", "ize"),
        ("abli", "able"),
        ("alli", "al"),
        ("ator", "ate"),
        ("eli", "e"),
    ];
    apply_rules(w, RULES, 0);
}

fn step_3(w: &mut Vec<u8>) {
    const RULES: &[(&str, &str)] = &[
        ("icate", "ic"),
        ("ative", ""),
        ("alize", "al"),
        ("iciti", "ic"),
        ("ical", "ic"),
        ("ness", ""),
        ("ful", ""),
    ];
    apply_rules(w, RULES, 0);
}

fn step_4(w: &mut Vec<u8>) {
    const RULES: &[(&str, &str)] = &[
        ("ement", ""),
        ("ance", ""),
        ("ence", ""),
        ("able", ""),
        ("ible", ""),
        ("ment", ""),
        ("ant", ""),
        ("ent", ""),
        ("ism", ""),
        ("ate", ""),
        ("iti", ""),
        ("ous", ""),
        ("ive", ""),
        ("ize", ""),
        ("ion", ""),
        ("al", ""),
        ("er", ""),
        ("ic", ""),
        ("ou", ""),
    ];
    for (suffix, _) in RULES {
        if ends_with(w, suffix) {
            let stem_len = w.len() - suffix.len();
            if measure(&w[..stem_len]) > 1 {
                // ion only strips after s or t.
                if *suffix == "ion" && !matches!(w[stem_len - 1], b's' | b't') {
                    return;
                }
                w.truncate(stem_len);
            }
            return;
        }
    }
}

fn step_5a(w: &mut Vec<u8>) {
    if w.last() != Some(&b'e') {
        return;
    }
    let stem = &w[..w.len() - 1];
    let m = measure(stem);
    if m > 1 || (m == 1 && !ends_cvc(stem)) {
        w.pop();
    }
}

fn step_5b(w: &mut Vec<u8>) {
    if measure(w) > 1 && ends_double_consonant(w) && w.last() == Some(&b'l') {
        w.pop();
    }
}
