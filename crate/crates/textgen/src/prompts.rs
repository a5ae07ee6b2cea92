use std::path::Path;

use crate::TextgenError;

const EXTRACT: &str = include_str!("../prompts/extract.txt");
const TYPE_OPEN: &str = include_str!("../prompts/type_open.txt");
const TYPE_PREDEFINED: &str = include_str!("../prompts/type_predefined.txt");
const VERSION: &str = include_str!("../prompts/version.txt");

pub const EXTRACT_FILE: &str = "extract.txt";
pub const TYPE_OPEN_FILE: &str = "type_open.txt";
pub const TYPE_PREDEFINED_FILE: &str = "type_predefined.txt";
pub const VERSION_FILE: &str = "version.txt";

/// Prompt templates. Placeholders are `{text}` in the extraction prompt,
/// `{entities}` in both typing prompts and `{classes}` and `{fallback}` in
/// the constrained typing prompt.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prompts {
    pub version: String,
    pub extract: String,
    pub type_open: String,
    pub type_predefined: String,
}

impl Default for Prompts {
    /// The templates shipped in the crate's `prompts/` directory.
    fn default() -> Self {
        Prompts {
            version: VERSION.trim().to_string(),
            extract: EXTRACT.to_string(),
            type_open: TYPE_OPEN.to_string(),
            type_predefined: TYPE_PREDEFINED.to_string(),
        }
    }
}

impl Prompts {
    /// Loads the four template files from `dir`.
    pub fn load(dir: impl AsRef<Path>) -> Result<Prompts, TextgenError> {
        let dir = dir.as_ref();
        let read = |name: &str| {
            let path = dir.join(name);
            std::fs::read_to_string(&path).map_err(|source| TextgenError::Io { path, source })
        };
        let prompts = Prompts {
            version: read(VERSION_FILE)?.trim().to_string(),
            extract: read(EXTRACT_FILE)?,
            type_open: read(TYPE_OPEN_FILE)?,
            type_predefined: read(TYPE_PREDEFINED_FILE)?,
        };
        for (name, template, key) in [
            (EXTRACT_FILE, &prompts.extract, "{text}"),
            (TYPE_OPEN_FILE, &prompts.type_open, "{entities}"),
            (TYPE_PREDEFINED_FILE, &prompts.type_predefined, "{entities}"),
            (TYPE_PREDEFINED_FILE, &prompts.type_predefined, "{classes}"),
        ] {
            if !template.contains(key) {
                return Err(TextgenError::InvalidConfig(format!(
                    "{name} lacks the {key} placeholder"
                )));
            }
        }
        Ok(prompts)
    }

    pub fn render_extract(&self, text: &str) -> String {
        self.extract.replace("{text}", text.trim())
    }

    pub fn render_type_open(&self, entities: &[String]) -> String {
        self.type_open.replace("{entities}", &entities.join("\n"))
    }

    pub fn render_type_predefined(
        &self,
        entities: &[String],
        classes: &[String],
        allow_new: bool,
    ) -> String {
        let fallback = if allow_new {
            "If none of the allowed classes fits, give a new concise class name."
        } else {
            "If none of the allowed classes fits, write Thing."
        };
        self.type_predefined
            .replace("{classes}", &classes.join("\n"))
            .replace("{fallback}", fallback)
            .replace("{entities}", &entities.join("\n"))
    }
}
