//! Ground stimulus labels: an event name plus concrete argument values.
//!
//! The textual form (`activate`, `set(3,"ab")`) is shared by the `.suite`
//! file format and the wire protocol's `CALL` lines: int arguments are
//! decimal, string arguments double-quoted with `\"` and `\\` escapes, and
//! arguments are comma-separated with no padding.

use std::fmt;

use crate::model::Sort;

/// One concrete argument value.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Value {
    Int(i64),
    Str(String),
}

impl Value {
    pub fn sort(&self) -> Sort {
        match self {
            Value::Int(_) => Sort::Int,
            Value::Str(_) => Sort::Str,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(i) => write!(f, "{i}"),
            Value::Str(s) => {
                f.write_str("\"")?;
                for c in s.chars() {
                    if c == '"' || c == '\\' {
                        write!(f, "\\{c}")?;
                    } else {
                        write!(f, "{c}")?;
                    }
                }
                f.write_str("\"")
            }
        }
    }
}

/// A stimulus with all parameters bound to values. The argument-free case
/// renders as the bare event name.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroundStimulus {
    pub name: String,
    pub args: Vec<Value>,
}

impl GroundStimulus {
    pub fn bare(name: impl Into<String>) -> Self {
        GroundStimulus {
            name: name.into(),
            args: Vec::new(),
        }
    }
}

impl fmt::Display for GroundStimulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)?;
        if !self.args.is_empty() {
            f.write_str("(")?;
            for (i, arg) in self.args.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{arg}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

pub(crate) fn is_event_name(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parse a ground stimulus at the start of `input`; returns the label and
/// the unconsumed rest. Used by both the suite reader and the wire decoder.
pub fn parse_ground_stimulus(input: &str) -> Result<(GroundStimulus, &str), String> {
    let name_end = input
        .char_indices()
        .find(|(i, c)| {
            if *i == 0 {
                !(c.is_ascii_alphabetic() || *c == '_')
            } else {
                !(c.is_ascii_alphanumeric() || *c == '_')
            }
        })
        .map(|(i, _)| i)
        .unwrap_or(input.len());
    if name_end == 0 {
        return Err(format!("expected an event name at `{input}`"));
    }
    let name = &input[..name_end];
    let mut rest = &input[name_end..];
    let mut args = Vec::new();
    if let Some(stripped) = rest.strip_prefix('(') {
        rest = stripped;
        loop {
            let (value, after) = parse_value(rest)?;
            args.push(value);
            rest = after;
            if let Some(after_comma) = rest.strip_prefix(',') {
                rest = after_comma;
            } else if let Some(after_close) = rest.strip_prefix(')') {
                rest = after_close;
                break;
            } else {
                return Err(format!("expected `,` or `)` at `{rest}`"));
            }
        }
    }
    Ok((
        GroundStimulus {
            name: name.to_string(),
            args,
        },
        rest,
    ))
}

/// Parse one argument value at the start of `input`.
pub fn parse_value(input: &str) -> Result<(Value, &str), String> {
    let mut chars = input.char_indices();
    match chars.next() {
        Some((_, '"')) => {
            let mut s = String::new();
            let mut escaped = false;
            for (i, c) in chars {
                if escaped {
                    match c {
                        '"' | '\\' => s.push(c),
                        other => return Err(format!("invalid escape `\\{other}`")),
                    }
                    escaped = false;
                } else if c == '\\' {
                    escaped = true;
                } else if c == '"' {
                    return Ok((Value::Str(s), &input[i + 1..]));
                } else {
                    s.push(c);
                }
            }
            Err("unterminated string argument".to_string())
        }
        Some((_, c)) if c == '-' || c.is_ascii_digit() => {
            let end = input
                .char_indices()
                .skip(1)
                .find(|(_, c)| !c.is_ascii_digit())
                .map(|(i, _)| i)
                .unwrap_or(input.len());
            let digits = &input[..end];
            if digits == "-" {
                return Err("expected digits after `-`".to_string());
            }
            let n: i64 = digits
                .parse()
                .map_err(|_| format!("integer `{digits}` out of range"))?;
            Ok((Value::Int(n), &input[end..]))
        }
        _ => Err(format!("expected an argument value at `{input}`")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_forms() {
        assert_eq!(GroundStimulus::bare("activate").to_string(), "activate");
        let g = GroundStimulus {
            name: "set".into(),
            args: vec![Value::Int(-3), Value::Str("a\"b\\c".into())],
        };
        assert_eq!(g.to_string(), r#"set(-3,"a\"b\\c")"#);
    }

    #[test]
    fn parse_round_trips_display() {
        for text in ["activate", "set(3)", r#"set(-3,"a\"b\\c")"#, r#"f("")"#] {
            let (g, rest) = parse_ground_stimulus(text).unwrap();
            assert_eq!(rest, "");
            assert_eq!(g.to_string(), text);
        }
    }

    #[test]
    fn parse_leaves_unconsumed_tail() {
        let (g, rest) = parse_ground_stimulus("go EXPECT REPLY ok").unwrap();
        assert_eq!(g, GroundStimulus::bare("go"));
        assert_eq!(rest, " EXPECT REPLY ok");
    }

    #[test]
    fn malformed_inputs_are_errors() {
        for text in ["", "(", "set(", "set()", "set(3", "set(3,)", r#"set("a"#, "set(3x)", "9go"] {
            assert!(
                parse_ground_stimulus(text)
                    .map(|(_, rest)| !rest.is_empty())
                    .unwrap_or(true),
                "accepted fully: {text}"
            );
        }
    }

    #[test]
    fn unterminated_escape_is_error() {
        assert!(parse_value(r#""ab\"#).is_err());
        assert!(parse_value(r#""ab\n""#).is_err());
    }
}
