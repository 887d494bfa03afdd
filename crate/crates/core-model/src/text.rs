use unicode_normalization::UnicodeNormalization;

/// Canonical comparison form used for dedup and distinctness checks everywhere
/// in the pipeline: NFC, casefold, whitespace collapsed to single spaces, and
/// terminal punctuation stripped.
pub fn normalize_for_dedup(text: &str) -> String {
    let nfc: String = text.nfc().collect();
    let folded = nfc.to_lowercase();
    let collapsed = folded.split_whitespace().collect::<Vec<_>>().join(" ");
    collapsed
        .trim_end_matches(|c: char| !c.is_alphanumeric())
        .to_string()
}
