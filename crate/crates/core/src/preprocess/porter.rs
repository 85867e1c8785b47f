//! Porter suffix-stripping stemmer.
//!
//! Deterministic, dictionary-free reduction of inflected English words to a
//! common stem. Operates on lowercase ASCII words; tokens containing digits,
//! hyphens or non-ASCII letters pass through unchanged apart from possessive
//! stripping.

/// Stems one lowercased token.
///
/// A trailing possessive marker (`'s` or `'`) is stripped first; purely
/// alphabetic tokens then go through the Porter algorithm.
pub fn stem(token: &str) -> String {
    let t = token.strip_suffix("'s").unwrap_or(token);
    let t = t.strip_suffix('\'').unwrap_or(t);
    if !t.is_empty() && t.bytes().all(|b| b.is_ascii_lowercase()) {
        porter(t)
    } else {
        t.to_string()
    }
}

fn porter(word: &str) -> String {
    if word.len() <= 2 {
        return word.to_string();
    }
    let mut b = word.as_bytes().to_vec();
    step_1a(&mut b);
    step_1b(&mut b);
    step_1c(&mut b);
    step_2(&mut b);
    step_3(&mut b);
    step_4(&mut b);
    step_5a(&mut b);
    step_5b(&mut b);
    String::from_utf8(b).expect("stemmer operates on ASCII")
}

/// True when `b[i]` acts as a consonant. `y` is a consonant at the start of
/// the word or after a vowel, and a vowel after a consonant.
fn is_consonant(b: &[u8], i: usize) -> bool {
    match b[i] {
        b'a' | b'e' | b'i' | b'o' | b'u' => false,
        b'y' => i == 0 || !is_consonant(b, i - 1),
        _ => true,
    }
}

/// The measure m of the prefix `b[..len]`: the number of vowel-consonant
/// sequences in its [C](VC)^m[V] form.
fn measure(b: &[u8], len: usize) -> usize {
    let mut m = 0;
    let mut prev_vowel = false;
    for i in 0..len {
        let cons = is_consonant(b, i);
        if cons && prev_vowel {
            m += 1;
        }
        prev_vowel = !cons;
    }
    m
}

fn has_vowel(b: &[u8], len: usize) -> bool {
    (0..len).any(|i| !is_consonant(b, i))
}

fn ends_double_consonant(b: &[u8], len: usize) -> bool {
    len >= 2 && b[len - 1] == b[len - 2] && is_consonant(b, len - 1)
}

/// consonant-vowel-consonant ending where the final consonant is not w, x
/// or y; the condition that turns e.g. "fil" back into "file".
fn ends_cvc(b: &[u8], len: usize) -> bool {
    len >= 3
        && is_consonant(b, len - 3)
        && !is_consonant(b, len - 2)
        && is_consonant(b, len - 1)
        && !matches!(b[len - 1], b'w' | b'x' | b'y')
}

fn ends_with(b: &[u8], suffix: &str) -> bool {
    b.len() >= suffix.len() && &b[b.len() - suffix.len()..] == suffix.as_bytes()
}

fn replace_suffix(b: &mut Vec<u8>, suffix_len: usize, replacement: &str) {
    let keep = b.len() - suffix_len;
    b.truncate(keep);
    b.extend_from_slice(replacement.as_bytes());
}

// sses -> ss, ies -> i, ss -> ss, s -> ""
fn step_1a(b: &mut Vec<u8>) {
    if ends_with(b, "sses") {
        b.truncate(b.len() - 2);
    } else if ends_with(b, "ies") {
        b.truncate(b.len() - 2);
    } else if ends_with(b, "ss") {
        // unchanged
    } else if ends_with(b, "s") {
        b.truncate(b.len() - 1);
    }
}

// (m>0) eed -> ee; (*v*) ed -> ""; (*v*) ing -> ""; with cleanup when the
// ed/ing rule fired.
fn step_1b(b: &mut Vec<u8>) {
    if ends_with(b, "eed") {
        if measure(b, b.len() - 3) > 0 {
            b.truncate(b.len() - 1);
        }
        return;
    }
    let fired = if ends_with(b, "ed") && has_vowel(b, b.len() - 2) {
        b.truncate(b.len() - 2);
        true
    } else if ends_with(b, "ing") && has_vowel(b, b.len() - 3) {
        b.truncate(b.len() - 3);
        true
    } else {
        false
    };
    if !fired {
        return;
    }
    if ends_with(b, "at") || ends_with(b, "bl") || ends_with(b, "iz") {
        b.push(b'e');
    } else if ends_double_consonant(b, b.len()) && !matches!(b[b.len() - 1], b'l' | b's' | b'z') {
        b.truncate(b.len() - 1);
    } else if measure(b, b.len()) == 1 && ends_cvc(b, b.len()) {
        b.push(b'e');
    }
}

// (*v*) y -> i
fn step_1c(b: &mut Vec<u8>) {
    if ends_with(b, "y") && has_vowel(b, b.len() - 1) {
        let last = b.len() - 1;
        b[last] = b'i';
    }
}

/// Applies the first rule whose suffix matches (rules are ordered longest
/// suffix first) provided the remaining stem satisfies `min_measure`. Once a
/// suffix matches, no shorter suffix is tried.
fn apply_rules(b: &mut Vec<u8>, rules: &[(&str, &str)], min_measure: usize) {
    for &(suffix, replacement) in rules {
        if ends_with(b, suffix) {
            if measure(b, b.len() - suffix.len()) > min_measure {
                replace_suffix(b, suffix.len(), replacement);
            }
            return;
        }
    }
}

fn step_2(b: &mut Vec<u8>) {
    const RULES: &[(&str, &str)] = &[
        ("ational", "ate"),
        ("ization", "ize"),
        ("iveness", "ive"),
        ("fulness", "ful"),
        ("ousness", "ous"),
        ("tional", "tion"),
        ("biliti", "ble"),
        ("entli", "ent"),
        ("ousli", "ous"),
        ("ation", "ate"),
        ("alism", "al"),
        ("aliti", "al"),
        ("iviti", "ive"),
        ("enci", "ence"),
        ("anci", "ance"),
        ("izer", "ize"),
        ("abli", "able"),
        ("alli", "al"),
        ("ator", "ate"),
        ("eli", "e"),
    ];
    apply_rules(b, RULES, 0);
}

fn step_3(b: &mut Vec<u8>) {
    const RULES: &[(&str, &str)] = &[
        ("icate", "ic"),
        ("ative", ""),
        ("alize", "al"),
        ("iciti", "ic"),
        ("ical", "ic"),
        ("ness", ""),
        ("ful", ""),
    ];
    apply_rules(b, RULES, 0);
}

fn step_4(b: &mut Vec<u8>) {
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
    for &(suffix, replacement) in RULES {
        if ends_with(b, suffix) {
            let stem_len = b.len() - suffix.len();
            let extra_ok = suffix != "ion"
                || (stem_len >= 1 && matches!(b[stem_len - 1], b's' | b't'));
            if measure(b, stem_len) > 1 && extra_ok {
                replace_suffix(b, suffix.len(), replacement);
            }
            return;
        }
    }
}

// (m>1) e -> ""; (m=1 and not *o) e -> ""
fn step_5a(b: &mut Vec<u8>) {
    if !ends_with(b, "e") {
        return;
    }
    let stem_len = b.len() - 1;
    let m = measure(b, stem_len);
    if m > 1 || (m == 1 && !ends_cvc(b, stem_len)) {
        b.truncate(stem_len);
    }
}

// (m>1 and *d and *L) -> single letter
fn step_5b(b: &mut Vec<u8>) {
    if measure(b, b.len()) > 1 && ends_double_consonant(b, b.len()) && b[b.len() - 1] == b'l' {
        b.truncate(b.len() - 1);
    }
}
