//! Judge reply parsers. Both are strict about range (1..=10) and lenient
//! about surrounding prose where the format instruction allows it.

/// Parse the first reply line as exactly two space-separated integers.
pub fn parse_pair_scores(reply: &str) -> Option<(u8, u8)> {
    let first_line = reply.lines().next()?;
    let tokens: Vec<&str> = first_line.split_whitespace().collect();
    if tokens.len() != 2 {
        return None;
    }
    let a = parse_in_range(tokens[0])?;
    let b = parse_in_range(tokens[1])?;
    Some((a, b))
}

/// Parse the first `Score:` occurrence anywhere in the reply. Accepts an
/// optional bracket around the integer, mirroring the instruction wording.
pub fn parse_score(reply: &str) -> Option<u8> {
    let lower = reply.to_lowercase();
    let idx = lower.find("score:")?;
    let rest = &reply[idx + "score:".len()..];
    let rest = rest.trim_start();
    let rest = rest.strip_prefix('[').unwrap_or(rest).trim_start();
    let digits: String = rest.chars().take_while(|c| c.is_ascii_digit()).collect();
    parse_in_range(&digits)
}

fn parse_in_range(token: &str) -> Option<u8> {
    let value: u8 = token.parse().ok()?;
    (1..=10).contains(&value).then_some(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_scores_from_first_line() {
        assert_eq!(
            parse_pair_scores("8 6\nAssistant 1 was clearer."),
            Some((8, 6))
        );
        assert_eq!(parse_pair_scores("10 1"), Some((10, 1)));
        assert_eq!(parse_pair_scores("8 6 7"), None);
        assert_eq!(parse_pair_scores("scores: 8 6"), None);
        assert_eq!(parse_pair_scores("8"), None);
        assert_eq!(parse_pair_scores("11 5"), None);
        assert_eq!(parse_pair_scores("0 5"), None);
        assert_eq!(parse_pair_scores(""), None);
    }

    #[test]
    fn score_pattern_found_anywhere() {
        assert_eq!(parse_score("Score: 9"), Some(9));
        assert_eq!(parse_score("I'd say Score: 10 overall"), Some(10));
        assert_eq!(parse_score("score: [7]"), Some(7));
        assert_eq!(parse_score("Score: 11"), None);
        assert_eq!(parse_score("Score: 0"), None);
        assert_eq!(parse_score("ten"), None);
        assert_eq!(parse_score("9 out of 10, great flow"), None);
    }

    #[test]
    fn first_occurrence_wins() {
        assert_eq!(parse_score("Score: 3. Revised Score: 9"), Some(3));
    }
}
