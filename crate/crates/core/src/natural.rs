//! Natural (numeric-aware) ordering for identifier strings.
//!
//! Edge and node ids are free-form strings, but numbered ids such as `"2"`
//! and `"10"` must order numerically for canonical listings to look sane.
//! [`natural_cmp`] compares ids as alternating runs of digits and non-digits:
//! digit runs compare by numeric value, other runs byte-wise.

use std::cmp::Ordering;

/// Compares two id strings in natural order.
///
/// `"2" < "10"`, `"m2" < "m10"`, `"14" < "14__split" < "15"`. Digit runs with
/// equal numeric value but different spelling (`"01"` vs `"1"`) fall back to
/// byte order so the relation stays a total order.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    let mut ra = runs(a);
    let mut rb = runs(b);
    loop {
        match (ra.next(), rb.next()) {
            (None, None) => return a.as_bytes().cmp(b.as_bytes()),
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some(x), Some(y)) => {
                let ord = match (parse_digits(x), parse_digits(y)) {
                    (Some(nx), Some(ny)) => nx.cmp(&ny),
                    _ => x.as_bytes().cmp(y.as_bytes()),
                };
                if ord != Ordering::Equal {
                    return ord;
                }
            }
        }
    }
}

/// Sorts a slice of id-like strings in natural order.
pub fn sort_natural<S: AsRef<str>>(items: &mut [S]) {
    items.sort_by(|a, b| natural_cmp(a.as_ref(), b.as_ref()));
}

fn runs(s: &str) -> impl Iterator<Item = &str> {
    let bytes = s.as_bytes();
    let mut start = 0;
    std::iter::from_fn(move || {
        if start >= bytes.len() {
            return None;
        }
        let digit = bytes[start].is_ascii_digit();
        let mut end = start + 1;
        while end < bytes.len() && bytes[end].is_ascii_digit() == digit {
            end += 1;
        }
        let run = &s[start..end];
        start = end;
        Some(run)
    })
}

fn parse_digits(run: &str) -> Option<u128> {
    if run.bytes().all(|b| b.is_ascii_digit()) {
        // Saturate rather than fail on absurdly long digit runs; ordering
        // still falls back to byte comparison via the total-order tail.
        let mut v: u128 = 0;
        for b in run.bytes() {
            v = v.saturating_mul(10).saturating_add((b - b'0') as u128);
        }
        Some(v)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numeric_ids_order_by_value() {
        let mut ids = vec!["10", "2", "1", "21", "3"];
        sort_natural(&mut ids);
        assert_eq!(ids, vec!["1", "2", "3", "10", "21"]);
    }

    #[test]
    fn mixed_runs_compare_piecewise() {
        assert_eq!(natural_cmp("m2", "m10"), Ordering::Less);
        assert_eq!(natural_cmp("14__split", "15"), Ordering::Less);
        assert_eq!(natural_cmp("14", "14__split"), Ordering::Less);
        assert_eq!(natural_cmp("a", "ab"), Ordering::Less);
        assert_eq!(natural_cmp("abc", "abd"), Ordering::Less);
    }

    #[test]
    fn equal_value_different_spelling_is_total() {
        assert_ne!(natural_cmp("01", "1"), Ordering::Equal);
        assert_eq!(natural_cmp("01", "01"), Ordering::Equal);
    }
}
