use serde::{Deserialize, Serialize};

/// A user personality injected into the user-model system prompt.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Persona {
    pub id: String,
    pub description: String,
}

/// The shipped persona catalog (12 entries).
pub fn persona_catalog() -> Vec<Persona> {
    let personas: Vec<Persona> = serde_json::from_str(include_str!("../data/personas.json"))
        .expect("embedded persona catalog is valid");
    assert!(personas.len() >= 10, "catalog ships at least 10 personas");
    personas
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_is_valid_and_nonempty() {
        let personas = persona_catalog();
        assert!(personas.len() >= 10);
        for p in &personas {
            assert!(!p.id.is_empty());
            assert!(!p.description.trim().is_empty());
        }
        let mut ids: Vec<&str> = personas.iter().map(|p| p.id.as_str()).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), personas.len(), "persona ids are unique");
    }
}
