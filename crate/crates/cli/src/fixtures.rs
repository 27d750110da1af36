//! Fixture documents compiled into the binary, addressable by name.

const FIXTURES: &[(&str, &str)] = &[
    ("ex36", include_str!("../fixtures/ex36.json")),
    ("rem37", include_str!("../fixtures/rem37.json")),
    ("ex38", include_str!("../fixtures/ex38.json")),
    ("ex6", include_str!("../fixtures/ex6.json")),
    ("ex6_f1", include_str!("../fixtures/ex6_f1.json")),
    ("ex6_f2", include_str!("../fixtures/ex6_f2.json")),
    ("ex6_f3", include_str!("../fixtures/ex6_f3.json")),
    ("ex6_f4", include_str!("../fixtures/ex6_f4.json")),
    ("ex6_f5", include_str!("../fixtures/ex6_f5.json")),
    (
        "ex6_paper_basis",
        include_str!("../fixtures/ex6_paper_basis.json"),
    ),
];

pub fn get(name: &str) -> Option<&'static str> {
    FIXTURES.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

pub fn names() -> impl Iterator<Item = &'static str> {
    FIXTURES.iter().map(|(n, _)| *n)
}
