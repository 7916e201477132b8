//! Published reference values, indexed by `k - 1` with entry `j - 1` of each
//! row holding the value for `j` blocks.

/// `F(2k, j)` for `k = 1..=11`, `j = 1..=k+1`.
pub const F_TABLE: [&[u64]; 11] = [
    &[1, 1],
    &[1, 5, 2],
    &[1, 19, 24, 5],
    &[1, 69, 202, 112, 14],
    &[1, 251, 1520, 1665, 510, 42],
    &[1, 923, 11000, 21121, 11827, 2277, 132],
    &[1, 3431, 78806, 249137, 226205, 76111, 10010, 429],
    &[1, 12869, 566234, 2840928, 3918842, 2044444, 456456, 43472, 1430],
    &[1, 48619, 4105320, 31954529, 64318998, 48721602, 16387776, 2596596, 186966, 4862],
    &[1, 184755, 30114712, 358556005, 1025094615, 1081809409, 513317334, 120110865, 14177490, 797810, 16796],
    &[1, 705431, 223707242, 4040139741, 16099942903, 23011155057, 14774891956, 4781025480, 821327364, 74918558, 3382456, 58786],
];

/// The Borel-triangle predictions for the same entries.
pub const CONJECTURED_TABLE: [&[u64]; 11] = [
    &[1, 1],
    &[1, 5, 2],
    &[1, 19, 24, 5],
    &[1, 69, 202, 112, 14],
    &[1, 251, 1520, 1665, 510, 42],
    &[1, 923, 10988, 21109, 11825, 2277, 132],
    &[1, 3431, 78428, 248339, 225862, 76076, 10010, 429],
    &[1, 12869, 559130, 2813712, 3896970, 2039128, 456092, 43472, 1430],
    &[1, 48619, 4001136, 31278521, 63425538, 48338310, 16327752, 2593656, 186966, 4862],
    &[1, 184755, 28795012, 344578585, 996691265, 1062780789, 508232748, 119555220, 14157090, 797810, 16796],
    &[1, 705431, 208515164, 3783013707, 15328496106, 22255811424, 14469523530, 4725337221, 816841806, 74790650, 3382456, 58786],
];

/// `N^{2k+1} E[tr rho^k]` for `k = 6`, monomial coefficients of `N^1..=N^7`.
pub const Q6_MONOMIAL: [i64; 7] = [0, -46, 262, -624, 772, -495, 132];

/// Same for `k = 7`, coefficients of `N^1..=N^8`.
pub const Q7_MONOMIAL: [i64; 8] = [0, 216, -1204, 3073, -4550, 4039, -2002, 429];

/// Reference row for `k`, if tabulated.
pub fn f_row(k: usize) -> Option<&'static [u64]> {
    k.checked_sub(1).and_then(|i| F_TABLE.get(i)).copied()
}

pub fn conjectured_row(k: usize) -> Option<&'static [u64]> {
    k.checked_sub(1).and_then(|i| CONJECTURED_TABLE.get(i)).copied()
}
