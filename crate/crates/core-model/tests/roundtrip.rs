//! Round-trip identity over generated records: serialize then deserialize must
//! reproduce every field, for arbitrary unicode content.

use core_model::{
    deserialize_record, serialize_record, Dialogue, LineageStep, OpeningLine, Record, Role, Sector,
    Turn, WhitespaceTokenizer,
};
use proptest::prelude::*;

fn sector_strategy() -> impl Strategy<Value = Sector> {
    prop_oneof![
        Just(Sector::WorldQuestions),
        Just(Sector::CreationGeneration),
        Just(Sector::MaterialAssistance),
    ]
}

fn content_strategy() -> impl Strategy<Value = String> {
    // Arbitrary unicode including newlines, quotes, and control-adjacent chars.
    proptest::string::string_regex("[ -~\u{00a1}-\u{20ac}\n\t\"\\\\]{1,60}")
        .unwrap()
        .prop_filter("non-empty after trim", |s| !s.trim().is_empty())
}

fn dialogue_strategy() -> impl Strategy<Value = Dialogue> {
    (
        proptest::collection::vec(content_strategy(), 2..8),
        sector_strategy(),
    )
        .prop_map(|(contents, sector)| {
            let turns: Vec<Turn> = contents
                .into_iter()
                .enumerate()
                .map(|(i, content)| {
                    let role = if i % 2 == 0 {
                        Role::User
                    } else {
                        Role::Assistant
                    };
                    Turn::new(role, content, &WhitespaceTokenizer)
                })
                .collect();
            Dialogue::new(sector, "op", "persona", "mock(seed=0)", turns)
        })
}

fn opening_strategy() -> impl Strategy<Value = OpeningLine> {
    (content_strategy(), content_strategy()).prop_map(|(text, value)| {
        OpeningLine::new(
            Sector::WorldQuestions,
            text,
            vec![LineageStep::new("topic", value)],
        )
    })
}

proptest! {
    #[test]
    fn dialogue_round_trips(d in dialogue_strategy()) {
        let record = Record::Dialogue(d);
        let line = serialize_record(&record);
        prop_assert!(!line.contains('\n'));
        let back = deserialize_record(&line, 1).unwrap();
        prop_assert_eq!(record, back);
    }

    #[test]
    fn opening_round_trips(o in opening_strategy()) {
        let record = Record::OpeningLine(o);
        let line = serialize_record(&record);
        prop_assert!(!line.contains('\n'));
        let back = deserialize_record(&line, 1).unwrap();
        prop_assert_eq!(record, back);
    }
}
