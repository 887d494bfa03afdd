use sha2::{Digest, Sha256};

/// Content-addressed identifier: hex digest of length-prefixed parts under a
/// domain tag. Identical content always maps to the identical id, which is what
/// resume and dedup lean on.
pub fn content_id(tag: &str, parts: &[&str]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(tag.as_bytes());
    hasher.update([0u8]);
    for part in parts {
        hasher.update((part.len() as u64).to_le_bytes());
        hasher.update(part.as_bytes());
    }
    let digest = hasher.finalize();
    hex(&digest[..16])
}

/// Derive a child seed from a root seed and a label. Used to split one root
/// seed per stage and per record so partial reruns match full runs.
pub fn seed_split(seed: u64, label: &str) -> u64 {
    let mut hasher = Sha256::new();
    hasher.update(seed.to_le_bytes());
    hasher.update(label.as_bytes());
    let digest = hasher.finalize();
    u64::from_le_bytes(digest[..8].try_into().expect("digest is 32 bytes"))
}

fn hex(bytes: &[u8]) -> String {
    let mut out = String::with_capacity(bytes.len() * 2);
    for b in bytes {
        out.push_str(&format!("{b:02x}"));
    }
    out
}
