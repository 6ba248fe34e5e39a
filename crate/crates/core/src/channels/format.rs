//! Plain-text channel files.
//!
//! ```text
//! mixed_unitary 2 2
//! probs 0.333 0.667
//! <2 rows: first unitary>
//! <2 rows: second unitary>
//! ```
//! Other tags are `kraus d n` (followed by `n` matrices), `isotropic d unitary`
//! or `isotropic d antiunitary` (a `gamma` line, the unitary, and for the
//! antiunitary form the transpose basis as columns), and `semiclassical d`
//! (the basis as columns, then a nested channel). Matrices use the row format
//! of state files.

use super::{ChannelKind, QuantumChannel};
use crate::error::{Error, Result};
use crate::states::{fmt_f64, parse_count, parse_f64, write_matrix, LineReader};

pub fn parse_channel(text: &str) -> Result<QuantumChannel> {
    let mut r = LineReader::new(text);
    let ch = read_channel(&mut r)?;
    r.expect_end()?;
    Ok(ch)
}

fn arg<'a>(no: usize, args: &[&'a str], i: usize, what: &str) -> Result<&'a str> {
    args.get(i)
        .copied()
        .ok_or_else(|| Error::parse(no, format!("missing {what}")))
}

fn read_channel(r: &mut LineReader<'_>) -> Result<QuantumChannel> {
    let (no, tokens) = r.next_line()?;
    let tag = tokens[0];
    let args = &tokens[1..];
    let d = parse_count(no, arg(no, args, 0, "dimension")?)?;
    match tag {
        "kraus" => {
            let n = parse_count(no, arg(no, args, 1, "operator count")?)?;
            let ops = (0..n).map(|_| r.matrix(d, d)).collect::<Result<Vec<_>>>()?;
            QuantumChannel::kraus(ops)
        }
        "mixed_unitary" => {
            let n = parse_count(no, arg(no, args, 1, "unitary count")?)?;
            let (pno, ptoks) = r.keyword("probs")?;
            if ptoks.len() != n {
                return Err(Error::parse(
                    pno,
                    format!("expected {n} probabilities, found {}", ptoks.len()),
                ));
            }
            let probs = ptoks
                .iter()
                .map(|t| parse_f64(pno, t))
                .collect::<Result<Vec<_>>>()?;
            let unitaries = (0..n).map(|_| r.matrix(d, d)).collect::<Result<Vec<_>>>()?;
            QuantumChannel::mixed_unitary(probs, unitaries)
        }
        "isotropic" => {
            let antiunitary = match arg(no, args, 1, "`unitary` or `antiunitary`")? {
                "unitary" => false,
                "antiunitary" => true,
                other => {
                    return Err(Error::parse(
                        no,
                        format!("expected `unitary` or `antiunitary`, found `{other}`"),
                    ))
                }
            };
            let (gno, gtoks) = r.keyword("gamma")?;
            if gtoks.len() != 1 {
                return Err(Error::parse(gno, "expected one value after `gamma`"));
            }
            let gamma = parse_f64(gno, gtoks[0])?;
            let u = r.matrix(d, d)?;
            if antiunitary {
                let basis = r.matrix(d, d)?;
                QuantumChannel::antiunitary_isotropic(gamma, u, basis)
            } else {
                QuantumChannel::isotropic(gamma, u)
            }
        }
        "semiclassical" => {
            let basis = r.matrix(d, d)?;
            let inner = read_channel(r)?;
            if inner.dim() != d {
                return Err(Error::dims(d, inner.dim()));
            }
            QuantumChannel::semiclassical(basis, inner)
        }
        other => Err(Error::parse(no, format!("unknown channel tag `{other}`"))),
    }
}

pub fn write_channel(channel: &QuantumChannel) -> String {
    let mut out = String::new();
    write_into(&mut out, channel);
    out
}

fn write_into(out: &mut String, channel: &QuantumChannel) {
    let d = channel.dim();
    match channel.kind() {
        ChannelKind::Kraus { ops } => {
            out.push_str(&format!("kraus {d} {}\n", ops.len()));
            for k in ops {
                write_matrix(out, k);
            }
        }
        ChannelKind::MixedUnitary { probs, unitaries } => {
            out.push_str(&format!("mixed_unitary {d} {}\n", probs.len()));
            let ps: Vec<String> = probs.iter().map(|&p| fmt_f64(p)).collect();
            out.push_str(&format!("probs {}\n", ps.join(" ")));
            for u in unitaries {
                write_matrix(out, u);
            }
        }
        ChannelKind::Isotropic {
            gamma,
            unitary,
            antiunitary,
            transpose_basis,
        } => {
            let form = if *antiunitary {
                "antiunitary"
            } else {
                "unitary"
            };
            out.push_str(&format!(
                "isotropic {d} {form}\ngamma {}\n",
                fmt_f64(*gamma)
            ));
            write_matrix(out, unitary);
            if *antiunitary {
                write_matrix(out, transpose_basis);
            }
        }
        ChannelKind::Semiclassical { basis, inner } => {
            out.push_str(&format!("semiclassical {d}\n"));
            write_matrix(out, basis);
            write_into(out, inner);
        }
    }
}
