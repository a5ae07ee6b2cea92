//! Mapping surface forms to IRI local names.

fn words(text: &str) -> impl Iterator<Item = String> + '_ {
    text.split(|c: char| !c.is_alphanumeric())
        .filter(|w| !w.is_empty())
        .map(str::to_string)
}

fn capitalize(word: &str) -> String {
    let mut chars = word.chars();
    match chars.next() {
        Some(first) => first.to_uppercase().chain(chars).collect(),
        None => String::new(),
    }
}

fn decapitalize(word: &str) -> String {
    let mut chars = word.chars();
    match chars.next() {
        Some(first) => first.to_lowercase().chain(chars).collect(),
        None => String::new(),
    }
}

/// Lowercases, turns whitespace runs into `_` and drops every other
/// character that is not alphanumeric: `Marie Curie` becomes `marie_curie`.
pub fn individual_name(surface: &str) -> String {
    surface
        .split_whitespace()
        .map(|w| {
            w.chars()
                .filter(|c| c.is_alphanumeric() || *c == '_')
                .collect::<String>()
        })
        .filter(|w| !w.is_empty())
        .collect::<Vec<_>>()
        .join("_")
        .to_lowercase()
}

/// camelCase over alphanumeric runs: `birth year` becomes `birthYear`.
pub fn property_name(surface: &str) -> String {
    let mut out = String::new();
    for (i, w) in words(surface).enumerate() {
        if i == 0 {
            out.push_str(&decapitalize(&w));
        } else {
            out.push_str(&capitalize(&w));
        }
    }
    out
}

/// CamelCase over alphanumeric runs: `chemical element` becomes `ChemicalElement`.
pub fn class_name(surface: &str) -> String {
    words(surface).map(|w| capitalize(&w)).collect()
}

/// The decimal-number lexical test for extracted objects:
/// an optional sign, digits, and optionally a point followed by digits.
pub fn is_decimal_number(text: &str) -> bool {
    let body = text.strip_prefix(['+', '-']).unwrap_or(text);
    let (int, frac) = match body.split_once('.') {
        Some((i, f)) => (i, Some(f)),
        None => (body, None),
    };
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    digits(int) && frac.is_none_or(digits)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn individuals() {
        assert_eq!(individual_name("Marie Curie"), "marie_curie");
        assert_eq!(
            individual_name("  Nobel   Prize in Physics "),
            "nobel_prize_in_physics"
        );
        assert_eq!(
            individual_name("Pierre-Curie (physicist)"),
            "pierrecurie_physicist"
        );
        assert_eq!(individual_name("École Normale"), "école_normale");
        assert_eq!(individual_name("!!"), "");
    }

    #[test]
    fn properties() {
        assert_eq!(property_name("birth year"), "birthYear");
        assert_eq!(property_name("won"), "won");
        assert_eq!(property_name("Was born in"), "wasBornIn");
        assert_eq!(property_name("hasChild"), "hasChild");
        assert_eq!(property_name("discovered-with"), "discoveredWith");
    }

    #[test]
    fn classes() {
        assert_eq!(class_name("ChemicalElement"), "ChemicalElement");
        assert_eq!(class_name("chemical element"), "ChemicalElement");
        assert_eq!(class_name("Person."), "Person");
        assert_eq!(class_name("award/prize"), "AwardPrize");
    }

    #[test]
    fn decimal_numbers() {
        for yes in ["1867", "-3", "+4", "3.14", "0.5", "007"] {
            assert!(is_decimal_number(yes), "{yes}");
        }
        for no in [
            "", "-", "1.", ".5", "1e5", "1,000", "12 kg", "NaN", "1.2.3", "+-1", "١٢",
        ] {
            assert!(!is_decimal_number(no), "{no}");
        }
    }
}
