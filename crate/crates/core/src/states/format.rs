//! Plain-text state files.
//!
//! ```text
//! dims 2 2
//! 0.5 0 0 0 0 0 0.5 0
//! ...
//! ```
//! A `dims` header is followed by one line per matrix row holding
//! whitespace-separated `re im` pairs. Numbers are written with 17 significant
//! digits so that reading a written file reproduces every bit. Blank lines and
//! `#` comments are ignored.

use std::fmt::Write as _;

use super::{BipartiteState, MultipartiteState};
use crate::error::{Error, Result};
use crate::linalg::matrix::{ComplexMatrix, C64};

/// Token stream over the non-empty, non-comment lines of a text file.
pub struct LineReader<'a> {
    lines: Vec<(usize, Vec<&'a str>)>,
    pos: usize,
}

impl<'a> LineReader<'a> {
    pub fn new(text: &'a str) -> Self {
        let lines = text
            .lines()
            .enumerate()
            .filter_map(|(i, raw)| {
                let content = raw.split('#').next().unwrap_or("");
                let tokens: Vec<&str> = content.split_whitespace().collect();
                (!tokens.is_empty()).then_some((i + 1, tokens))
            })
            .collect();
        Self { lines, pos: 0 }
    }

    pub fn next_line(&mut self) -> Result<(usize, Vec<&'a str>)> {
        let line = self
            .lines
            .get(self.pos)
            .cloned()
            .ok_or_else(|| Error::parse(self.last_line_no() + 1, "unexpected end of input"))?;
        self.pos += 1;
        Ok(line)
    }

    pub fn is_done(&self) -> bool {
        self.pos >= self.lines.len()
    }

    fn last_line_no(&self) -> usize {
        self.lines.last().map_or(0, |l| l.0)
    }

    /// Expects a line starting with `keyword`; returns the remaining tokens.
    pub fn keyword(&mut self, keyword: &str) -> Result<(usize, Vec<&'a str>)> {
        let (no, tokens) = self.next_line()?;
        if tokens[0] != keyword {
            return Err(Error::parse(
                no,
                format!("expected `{keyword}`, found `{}`", tokens[0]),
            ));
        }
        Ok((no, tokens[1..].to_vec()))
    }

    pub fn expect_end(&self) -> Result<()> {
        match self.lines.get(self.pos) {
            None => Ok(()),
            Some((no, _)) => Err(Error::parse(*no, "trailing content")),
        }
    }

    /// `rows` lines of `cols` complex pairs each.
    pub fn matrix(&mut self, rows: usize, cols: usize) -> Result<ComplexMatrix> {
        let mut data = Vec::with_capacity(rows * cols);
        for _ in 0..rows {
            let (no, tokens) = self.next_line()?;
            if tokens.len() != 2 * cols {
                return Err(Error::parse(
                    no,
                    format!(
                        "expected {} numbers ({cols} re/im pairs), found {}",
                        2 * cols,
                        tokens.len()
                    ),
                ));
            }
            for pair in tokens.chunks(2) {
                data.push(C64::new(parse_f64(no, pair[0])?, parse_f64(no, pair[1])?));
            }
        }
        ComplexMatrix::new(rows, cols, data)
            .map_err(|e| Error::parse(self.last_line_no(), e.to_string()))
    }
}

pub(crate) fn parse_f64(line: usize, tok: &str) -> Result<f64> {
    let v: f64 = tok
        .parse()
        .map_err(|_| Error::parse(line, format!("not a number: `{tok}`")))?;
    if !v.is_finite() {
        return Err(Error::parse(line, format!("non-finite number `{tok}`")));
    }
    Ok(v)
}

pub(crate) fn parse_count(line: usize, tok: &str) -> Result<usize> {
    match tok.parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(Error::parse(
            line,
            format!("expected a positive integer, found `{tok}`"),
        )),
    }
}

pub(crate) fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Appends `m` in row-per-line `re im` format.
pub fn write_matrix(out: &mut String, m: &ComplexMatrix) {
    for i in 0..m.rows() {
        let row: Vec<String> = (0..m.cols())
            .map(|j| {
                let z = m[(i, j)];
                format!("{} {}", fmt_f64(z.re), fmt_f64(z.im))
            })
            .collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
}

fn read_dims_and_matrix(text: &str) -> Result<(Vec<usize>, ComplexMatrix)> {
    let mut r = LineReader::new(text);
    let (no, args) = r.keyword("dims")?;
    if args.is_empty() {
        return Err(Error::parse(no, "`dims` needs at least one dimension"));
    }
    let dims = args
        .iter()
        .map(|t| parse_count(no, t))
        .collect::<Result<Vec<_>>>()?;
    let n: usize = dims.iter().product();
    let m = r.matrix(n, n)?;
    r.expect_end()?;
    Ok((dims, m))
}

pub fn parse_state(text: &str) -> Result<BipartiteState> {
    let (dims, m) = read_dims_and_matrix(text)?;
    match dims[..] {
        [a, b] => BipartiteState::new(m, a, b),
        _ => Err(Error::parse(
            1,
            format!("bipartite state needs 2 dims, found {}", dims.len()),
        )),
    }
}

pub fn parse_multipartite(text: &str) -> Result<MultipartiteState> {
    let (dims, m) = read_dims_and_matrix(text)?;
    MultipartiteState::new(m, dims)
}

pub fn write_state(state: &BipartiteState) -> String {
    let mut out = format!("dims {} {}\n", state.dim_a(), state.dim_b());
    write_matrix(&mut out, state.rho());
    out
}

pub fn write_multipartite(state: &MultipartiteState) -> String {
    let dims: Vec<String> = state.dims().iter().map(|d| d.to_string()).collect();
    let mut out = format!("dims {}\n", dims.join(" "));
    write_matrix(&mut out, state.rho());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::random::RandomSource;
    use crate::states::sample_random_bipartite;
    use proptest::prelude::*;

    #[test]
    fn bell_state_text() {
        let text = "# Bell state\ndims 2 2\n0.5 0 0 0 0 0 0.5 0\n0 0 0 0 0 0 0 0\n\n0 0 0 0 0 0 0 0\n0.5 0 0 0 0 0 0.5 0\n";
        let s = parse_state(text).unwrap();
        assert!(s.rho().max_abs_diff(BipartiteState::bell_phi_plus().rho()) < 1e-15);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = parse_state("dims 2 2\n1 0 0 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err:?}");
        let err = parse_state("dimz 2 2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = parse_state("dims 1 1\nabc 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = parse_state("dims 1 1\n1 0\n1 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
    }

    #[test]
    fn invariant_violations_are_not_parse_errors() {
        let err = parse_state("dims 1 1\n2 0\n").unwrap_err();
        assert!(matches!(err, Error::NotDensityMatrix(_)));
    }

    #[test]
    fn multipartite_header() {
        let mut text = String::from("dims 2 1 2\n");
        write_matrix(&mut text, &ComplexMatrix::identity(4).scale_real(0.25));
        let s = parse_multipartite(&text).unwrap();
        assert_eq!(s.dims(), &[2, 1, 2]);
        assert_eq!(parse_multipartite(&write_multipartite(&s)).unwrap(), s);
    }

    proptest! {
        #[test]
        fn write_then_parse_is_bit_exact(seed in any::<u64>(), da in 1usize..4, db in 1usize..4) {
            let mut rng = RandomSource::from_seed(seed);
            let s = sample_random_bipartite(&mut rng, da, db, da * db).unwrap();
            let back = parse_state(&write_state(&s)).unwrap();
            prop_assert_eq!(back, s);
        }
    }
}
