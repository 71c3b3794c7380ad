//! Constant R-matrix tables with `Z` factored out, in `(a, c, b, d)` order
//! for `R^a_c^b_d`, labels stored as twice their value. Each value is a
//! product of factors in the text syntax.

pub(super) type Entry = (i32, i32, i32, i32, &'static [&'static str]);

pub(super) const R2: &[Entry] = &[
    (-1, -1, -1, -1, &["1"]),
    (1, 1, 1, 1, &["1"]),
    (-1, -1, 1, 1, &["1 - q^2"]),
    (-1, 1, 1, -1, &["q"]),
    (1, -1, -1, 1, &["q"]),
];

/// The 4x4 display, rows `(a, b)` and columns `(c, d)` in flattened order.
pub(super) const R2_DISPLAY: [[&str; 4]; 4] = [
    ["1", "0", "0", "0"],
    ["0", "1 - q^2", "q", "0"],
    ["0", "q", "0", "0"],
    ["0", "0", "0", "1"],
];

pub(super) const R3: &[Entry] = &[
    (-2, -2, -2, -2, &["1"]),
    (2, 2, 2, 2, &["1"]),
    (-2, -2, 0, 0, &["1 - q^4"]),
    (0, 0, 2, 2, &["1 - q^4"]),
    (-2, 0, 0, -2, &["-q^2"]),
    (0, -2, -2, 0, &["-q^2"]),
    (0, 2, 2, 0, &["-q^2"]),
    (2, 0, 0, 2, &["-q^2"]),
    (-2, -2, 2, 2, &["1 - q^2", "1 - q^4"]),
    (-2, 0, 2, 0, &["q", "1 - q^4"]),
    (0, -2, 0, 2, &["q", "1 - q^4"]),
    (-2, 2, 2, -2, &["q^4"]),
    (2, -2, -2, 2, &["q^4"]),
    (0, 0, 0, 0, &["q^2"]),
];

pub(super) const R3_DISPLAY: [[&str; 9]; 9] = [
    ["1", "0", "0", "0", "0", "0", "0", "0", "0"],
    ["0", "1 - q^4", "0", "-q^2", "0", "0", "0", "0", "0"],
    ["0", "0", "1 - q^2 - q^4 + q^6", "0", "q - q^5", "0", "q^4", "0", "0"],
    ["0", "-q^2", "0", "0", "0", "0", "0", "0", "0"],
    ["0", "0", "q - q^5", "0", "q^2", "0", "0", "0", "0"],
    ["0", "0", "0", "0", "0", "1 - q^4", "0", "-q^2", "0"],
    ["0", "0", "q^4", "0", "0", "0", "0", "0", "0"],
    ["0", "0", "0", "0", "0", "-q^2", "0", "0", "0"],
    ["0", "0", "0", "0", "0", "0", "0", "0", "1"],
];

const A: i32 = 3;
const B: i32 = 1;

pub(super) const R4: &[Entry] = &[
    (A, A, A, A, &["1"]),
    (-A, -A, -A, -A, &["1"]),
    (-A, A, A, -A, &["q^9"]),
    (A, -A, -A, A, &["q^9"]),
    (-A, -A, A, A, &["1 - q^2", "1 - q^4", "1 - q^6"]),
    (A, B, B, A, &["q^3"]),
    (-A, -B, -B, -A, &["q^3"]),
    (B, A, A, B, &["q^3"]),
    (-B, -A, -A, -B, &["q^3"]),
    (B, -A, -A, B, &["q^6"]),
    (-B, A, A, -B, &["q^6"]),
    (-A, B, B, -A, &["q^6"]),
    (A, -B, -B, A, &["q^6"]),
    (-A, -A, -B, -B, &["1 - q^6"]),
    (B, B, A, A, &["1 - q^6"]),
    (B, -A, -B, A, &["q^4", "1 - q^6"]),
    (-A, B, A, -B, &["q^4", "1 - q^6"]),
    (-A, -B, B, -B, &["q^3", "1 - q^4", "rad"]),
    (B, -B, B, A, &["q^3", "1 - q^4", "rad"]),
    (-B, B, A, B, &["q^3", "1 - q^4", "rad"]),
    (-B, -A, -B, B, &["q^3", "1 - q^4", "rad"]),
    (-A, -A, B, B, &["1 - q^4", "1 - q^6"]),
    (-B, -B, A, A, &["1 - q^4", "1 - q^6"]),
    (-B, -A, B, A, &["q", "1 - q^4", "1 - q^6"]),
    (-A, -B, A, B, &["q", "1 - q^4", "1 - q^6"]),
    (B, B, B, B, &["q^4"]),
    (-B, -B, -B, -B, &["q^4"]),
    (B, -B, -B, B, &["q^5"]),
    (-B, B, B, -B, &["q^5"]),
    (-B, -B, B, B, &["q^2", "1 - q^4", "1 + q^2"]),
];

/// `M_u` row by row.
pub(super) const MU2: [[&str; 2]; 2] = [["0", "s"], ["-s^-1", "0"]];
pub(super) const MU3: [[&str; 3]; 3] = [["0", "0", "q"], ["0", "-1", "0"], ["q^-1", "0", "0"]];
pub(super) const MU4: [[&str; 4]; 4] = [
    ["0", "0", "0", "s^3"],
    ["0", "0", "-s", "0"],
    ["0", "s^-1", "0", "0"],
    ["-s^-3", "0", "0", "0"],
];
