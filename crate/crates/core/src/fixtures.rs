//! Small hand-made profiles used throughout the tests and docs.

use crate::election::Election;
use crate::io::parse_election;

/// Six voters over `a..f`. Voters `v1..v6` are indices `0..5`.
///
/// Contains an identity on `a > b > c > d` for `v1, v3, v6`, an antagonism
/// over `d, e, f` for all voters, and the clone pair `{e, f}`.
pub const WORKED_EXAMPLE_PROFILE: &str = "\
# six voters, six candidates
6 6
a
b
c
d
e
f
a > b > c > f > e > d
c > b > a > d > e > f
a > f > e > b > c > d
d > e > f > c > b > a
a > c > b > d > e > f
f > e > a > b > c > d
";

/// Three voters over `a..i` whose closest 4-candidate clone set, `{a,b,c,e}`,
/// is not a segment of any vote.
pub const SCATTERED_CLONE_PROFILE: &str = "\
9 3
a
b
c
d
e
f
g
h
i
a > b > c > d > e > f > g > h > i
d > f > g > i > a > b > c > h > e
a > b > c > f > e > i > d > h > g
";

pub fn worked_example() -> Election {
    parse_election(WORKED_EXAMPLE_PROFILE).expect("fixture parses")
}

pub fn scattered_clone_example() -> Election {
    parse_election(SCATTERED_CLONE_PROFILE).expect("fixture parses")
}

/// Looks up candidates by single-character labels, e.g. `"abd"`.
pub fn candidates(e: &Election, labels: &str) -> Vec<usize> {
    labels
        .chars()
        .map(|c| {
            e.candidate_index(&c.to_string())
                .unwrap_or_else(|| panic!("no candidate {c}"))
        })
        .collect()
}
