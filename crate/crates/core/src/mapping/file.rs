//! Text format for mapping tables.
//!
//! ```text
//! m=4
//! n=2
//! constellation=qam:4
//! lambda_er: 3 2 15 11 ...
//! lambda_or: ...
//! chi_el: 1 2 5 6 9 10 13 14
//! lambda_el: (3,11) (2,10) ...
//! lambda_ol: ...
//! ```
//!
//! Full mappings list the decimal label of each symbol in symbol order.
//! `chi_el` is 1-based. Half mappings list one label pair per symbol, in
//! ascending symbol order of their half. Lists may continue on following
//! lines; `#` starts a comment.

use std::fmt::Write as _;

use super::component::{FullMapping2D, HalfMapping2D};
use super::md::{complement, MdParts};
use crate::constellation::{Constellation, ConstellationKind};
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Key {
    Er,
    Or,
    ChiEl,
    El,
    Ol,
}

impl Key {
    fn parse(name: &str) -> Option<Self> {
        match name {
            "lambda_er" => Some(Key::Er),
            "lambda_or" => Some(Key::Or),
            "chi_el" => Some(Key::ChiEl),
            "lambda_el" => Some(Key::El),
            "lambda_ol" => Some(Key::Ol),
            _ => None,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Key::Er => "lambda_er",
            Key::Or => "lambda_or",
            Key::ChiEl => "chi_el",
            Key::El => "lambda_el",
            Key::Ol => "lambda_ol",
        }
    }

    fn is_pairs(self) -> bool {
        matches!(self, Key::El | Key::Ol)
    }
}

#[derive(Default)]
struct Lists {
    er: Option<(usize, Vec<usize>)>,
    or: Option<(usize, Vec<usize>)>,
    chi_el: Option<(usize, Vec<usize>)>,
    el: Option<(usize, Vec<(usize, usize)>)>,
    ol: Option<(usize, Vec<(usize, usize)>)>,
}

fn parse_number(token: &str, line: usize) -> Result<usize> {
    token.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("expected a non-negative integer, found `{token}`"),
    })
}

fn parse_pairs(text: &str, line: usize) -> Result<Vec<(usize, usize)>> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut out = Vec::new();
    let mut rest = compact.as_str();
    while !rest.is_empty() {
        let body = rest.strip_prefix('(').ok_or_else(|| Error::Parse {
            line,
            msg: format!("expected `(` at `{rest}`"),
        })?;
        let close = body.find(')').ok_or_else(|| Error::Parse {
            line,
            msg: "unterminated pair".into(),
        })?;
        let (a, b) = body[..close].split_once(',').ok_or_else(|| Error::Parse {
            line,
            msg: format!("pair `({})` needs two values", &body[..close]),
        })?;
        out.push((parse_number(a, line)?, parse_number(b, line)?));
        rest = body[close + 1..].trim_start_matches(',');
    }
    Ok(out)
}

/// Parses a mapping file. The constellation is built from the
/// `constellation=` header at unit energy.
pub fn parse_mapping_file(text: &str) -> Result<MdParts> {
    let mut m: Option<u32> = None;
    let mut n: Option<u32> = None;
    let mut kind: Option<(usize, ConstellationKind, u32)> = None;
    let mut lists = Lists::default();
    let mut current: Option<Key> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut body = content;
        if let Some((key, value)) = content.split_once('=') {
            let key = key.trim();
            let value = value.trim();
            current = None;
            match key {
                "m" => m = Some(parse_number(value, line)? as u32),
                "n" => n = Some(parse_number(value, line)? as u32),
                "constellation" => {
                    let (k, bits) = value.split_once(':').ok_or_else(|| Error::Parse {
                        line,
                        msg: "constellation must be written as kind:m".into(),
                    })?;
                    let k: ConstellationKind = k.parse().map_err(|e: Error| Error::Parse {
                        line,
                        msg: e.to_string(),
                    })?;
                    kind = Some((line, k, parse_number(bits.trim(), line)? as u32));
                }
                other => {
                    return Err(Error::Parse {
                        line,
                        msg: format!("unknown header `{other}`"),
                    })
                }
            }
            continue;
        }
        if let Some((key, value)) = content.split_once(':') {
            let key = key.trim();
            let k = Key::parse(key).ok_or_else(|| Error::Parse {
                line,
                msg: format!("unknown list `{key}`"),
            })?;
            let taken = match k {
                Key::Er => lists.er.is_some(),
                Key::Or => lists.or.is_some(),
                Key::ChiEl => lists.chi_el.is_some(),
                Key::El => lists.el.is_some(),
                Key::Ol => lists.ol.is_some(),
            };
            if taken {
                return Err(Error::Parse {
                    line,
                    msg: format!("`{}` given twice", k.name()),
                });
            }
            match k {
                Key::Er => lists.er = Some((line, Vec::new())),
                Key::Or => lists.or = Some((line, Vec::new())),
                Key::ChiEl => lists.chi_el = Some((line, Vec::new())),
                Key::El => lists.el = Some((line, Vec::new())),
                Key::Ol => lists.ol = Some((line, Vec::new())),
            }
            current = Some(k);
            body = value;
        }
        let k = current.ok_or_else(|| Error::Parse {
            line,
            msg: format!("unexpected content `{content}`"),
        })?;
        if k.is_pairs() {
            let pairs = parse_pairs(body, line)?;
            let slot = if k == Key::El {
                &mut lists.el
            } else {
                &mut lists.ol
            };
            slot.as_mut().expect("opened above").1.extend(pairs);
        } else {
            let values = body
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| parse_number(t, line))
                .collect::<Result<Vec<_>>>()?;
            let slot = match k {
                Key::Er => &mut lists.er,
                Key::Or => &mut lists.or,
                _ => &mut lists.chi_el,
            };
            slot.as_mut().expect("opened above").1.extend(values);
        }
    }

    let missing = |what: &str| Error::Parse {
        line: text.lines().count().max(1),
        msg: format!("missing `{what}`"),
    };
    let m = m.ok_or_else(|| missing("m"))?;
    let n = n.ok_or_else(|| missing("n"))?;
    let (kind_line, kind, kind_bits) = kind.ok_or_else(|| missing("constellation"))?;
    if kind_bits != m {
        return Err(Error::Parse {
            line: kind_line,
            msg: format!("constellation has {kind_bits} bits per symbol but m={m}"),
        });
    }
    if !(2..=10).contains(&m) {
        return Err(Error::Parse {
            line: 1,
            msg: format!("m={m} is outside 2..=10"),
        });
    }
    let constellation = Constellation::new(kind, m).map_err(|e| Error::Parse {
        line: kind_line,
        msg: e.to_string(),
    })?;
    let size = 1usize << m;
    let half = size / 2;

    let full = |entry: Option<(usize, Vec<usize>)>, name: &str| -> Result<FullMapping2D> {
        let (line, values) = entry.ok_or_else(|| missing(name))?;
        if values.len() != size {
            return Err(Error::Parse {
                line,
                msg: format!("{name} needs {size} values, found {}", values.len()),
            });
        }
        FullMapping2D::from_labels(values)
            .map_err(|e| Error::InvalidMapping(format!("line {line}: {name}: {e}")))
    };
    let lambda_er = full(lists.er, "lambda_er")?;
    let lambda_or = full(lists.or, "lambda_or")?;

    let (chi_line, chi_one_based) = lists.chi_el.ok_or_else(|| missing("chi_el"))?;
    if chi_one_based.len() != half {
        return Err(Error::Parse {
            line: chi_line,
            msg: format!("chi_el needs {half} symbols, found {}", chi_one_based.len()),
        });
    }
    let mut chi_el = Vec::with_capacity(half);
    for &s in &chi_one_based {
        if s == 0 || s > size {
            return Err(Error::Parse {
                line: chi_line,
                msg: format!("chi_el symbol {s} outside 1..={size}"),
            });
        }
        chi_el.push(s - 1);
    }
    if chi_el.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidMapping(format!(
            "line {chi_line}: chi_el must be strictly ascending"
        )));
    }
    let chi_ol = complement(&chi_el, size);

    let halfmap = |entry: Option<(usize, Vec<(usize, usize)>)>,
                   name: &str,
                   symbols: &[usize]|
     -> Result<HalfMapping2D> {
        let (line, pairs) = entry.ok_or_else(|| missing(name))?;
        if pairs.len() != half {
            return Err(Error::Parse {
                line,
                msg: format!("{name} needs {half} pairs, found {}", pairs.len()),
            });
        }
        HalfMapping2D::from_pairs(m, symbols, &pairs)
            .map_err(|e| Error::InvalidMapping(format!("line {line}: {name} pair: {e}")))
    };
    let lambda_el = halfmap(lists.el, "lambda_el", &chi_el)?;
    let lambda_ol = halfmap(lists.ol, "lambda_ol", &chi_ol)?;

    Ok(MdParts {
        m,
        n,
        constellation,
        lambda_er,
        lambda_or,
        lambda_el,
        lambda_ol,
        chi_el,
    })
}

/// Canonical text form; [`parse_mapping_file`] reads it back unchanged.
pub fn serialize_mapping_file(parts: &MdParts) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "m={}", parts.m);
    let _ = writeln!(out, "n={}", parts.n);
    let _ = writeln!(
        out,
        "constellation={}:{}",
        parts.constellation.kind(),
        parts.constellation.bits()
    );
    let join = |v: &mut dyn Iterator<Item = String>| v.collect::<Vec<_>>().join(" ");
    let _ = writeln!(
        out,
        "lambda_er: {}",
        join(&mut parts.lambda_er.labels().iter().map(|l| l.to_string()))
    );
    let _ = writeln!(
        out,
        "lambda_or: {}",
        join(&mut parts.lambda_or.labels().iter().map(|l| l.to_string()))
    );
    let _ = writeln!(
        out,
        "chi_el: {}",
        join(&mut parts.chi_el.iter().map(|s| (s + 1).to_string()))
    );
    let chi_ol = parts.chi_ol();
    for (name, map, order) in [
        ("lambda_el", &parts.lambda_el, &parts.chi_el),
        ("lambda_ol", &parts.lambda_ol, &chi_ol),
    ] {
        let pairs = map.pairs_in_order(order).unwrap_or_default();
        let _ = writeln!(
            out,
            "{name}: {}",
            join(&mut pairs.iter().map(|(a, b)| format!("({a},{b})")))
        );
    }
    out
}
