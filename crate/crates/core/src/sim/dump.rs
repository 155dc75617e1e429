use std::fmt::Write;

use super::state::PureState;

/// One line per amplitude above `cutoff`: qudit digits (qudit 0 first) and
/// the amplitude.
pub fn dump(state: &PureState, cutoff: f64) -> String {
    let mut out = format!("# d={} qudits={}\n", state.d(), state.qudits());
    for (i, a) in state.amplitudes().iter().enumerate() {
        if a.norm() <= cutoff {
            continue;
        }
        let digits: Vec<String> = (0..state.qudits()).map(|q| state.digit(i, q).to_string()).collect();
        let _ = writeln!(out, "{} {:+.12} {:+.12}", digits.join(","), a.re, a.im);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dump_lists_support() {
        let s = PureState::basis(3, &[2, 1], 64).unwrap();
        let text = dump(&s, 1e-12);
        assert_eq!(text.lines().count(), 2);
        assert!(text.contains("2,1 +1.0"));
    }
}
