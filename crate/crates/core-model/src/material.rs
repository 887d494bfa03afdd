//! The 20 writing-material categories and their URL-matching keywords. The
//! keyword lists are curated and versioned in `data/material_types.json`;
//! category order there is the fixed tie-break order for classification.

use serde::{Deserialize, Serialize};

use crate::error::ModelError;

pub const MATERIAL_TYPE_COUNT: usize = 20;

const BUILTIN_CATALOG: &str = include_str!("../data/material_types.json");

/// One writing category: stable slug, display name, and lowercase keywords
/// matched against source URLs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaterialType {
    pub slug: String,
    pub name: String,
    pub keywords: Vec<String>,
}

/// The full ordered table of material types.
#[derive(Debug, Clone)]
pub struct MaterialCatalog {
    types: Vec<MaterialType>,
}

impl MaterialCatalog {
    /// The catalog shipped with the crate. Panics only if the embedded data
    /// file is invalid, which the test suite rules out.
    pub fn builtin() -> MaterialCatalog {
        Self::from_json(BUILTIN_CATALOG).expect("embedded material catalog is valid")
    }

    pub fn from_json(json: &str) -> Result<MaterialCatalog, ModelError> {
        let types: Vec<MaterialType> =
            serde_json::from_str(json).map_err(|e| ModelError::MaterialCatalog(e.to_string()))?;
        let catalog = MaterialCatalog { types };
        catalog.check()?;
        Ok(catalog)
    }

    pub fn from_path(path: &std::path::Path) -> Result<MaterialCatalog, ModelError> {
        let json = std::fs::read_to_string(path)?;
        Self::from_json(&json)
    }

    fn check(&self) -> Result<(), ModelError> {
        if self.types.len() != MATERIAL_TYPE_COUNT {
            return Err(ModelError::MaterialCatalog(format!(
                "expected {} categories, found {}",
                MATERIAL_TYPE_COUNT,
                self.types.len()
            )));
        }
        for mt in &self.types {
            if mt.keywords.is_empty() {
                return Err(ModelError::MaterialCatalog(format!(
                    "category {} has no keywords",
                    mt.slug
                )));
            }
            for kw in &mt.keywords {
                if kw.is_empty() || *kw != kw.to_lowercase() {
                    return Err(ModelError::MaterialCatalog(format!(
                        "keyword {kw:?} in {} must be non-empty lowercase",
                        mt.slug
                    )));
                }
            }
        }
        let mut slugs: Vec<&str> = self.types.iter().map(|t| t.slug.as_str()).collect();
        slugs.sort_unstable();
        slugs.dedup();
        if slugs.len() != self.types.len() {
            return Err(ModelError::MaterialCatalog("duplicate slug".into()));
        }
        Ok(())
    }

    /// Categories in fixed (tie-break) order.
    pub fn types(&self) -> &[MaterialType] {
        &self.types
    }

    pub fn by_slug(&self, slug: &str) -> Option<&MaterialType> {
        self.types.iter().find(|t| t.slug == slug)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_catalog_has_twenty_valid_categories() {
        let catalog = MaterialCatalog::builtin();
        assert_eq!(catalog.types().len(), MATERIAL_TYPE_COUNT);
        for mt in catalog.types() {
            assert!(!mt.keywords.is_empty(), "{} has keywords", mt.slug);
            for kw in &mt.keywords {
                assert_eq!(*kw, kw.to_lowercase());
            }
        }
    }

    #[test]
    fn recipe_keyword_present() {
        let catalog = MaterialCatalog::builtin();
        let recipes = catalog.by_slug("recipes").unwrap();
        assert!(recipes.keywords.iter().any(|k| k == "recipe"));
    }

    #[test]
    fn wrong_count_rejected() {
        let err = MaterialCatalog::from_json(r#"[{"slug":"a","name":"A","keywords":["x"]}]"#);
        assert!(err.is_err());
    }

    #[test]
    fn uppercase_keyword_rejected() {
        let mut types: Vec<MaterialType> = serde_json::from_str(BUILTIN_CATALOG).unwrap();
        types[0].keywords[0] = "Blog".into();
        let json = serde_json::to_string(&types).unwrap();
        assert!(MaterialCatalog::from_json(&json).is_err());
    }
}
