use std::fmt;

use serde_json::Value;

use crate::io::ParseDiagnostic;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    Field(String),
    Index(usize),
    /// `[*]`: every element of an array.
    Wildcard,
    /// `[{index}]`: the element at the index of the innermost iteration.
    CurrentIndex,
}

/// `$` followed by `.field`, `[n]`, `[*]` and `[{index}]` steps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathExpr {
    pub steps: Vec<Step>,
}

impl PathExpr {
    /// Parses a path; diagnostics are positioned within `text` (line 1).
    pub fn parse(text: &str) -> Result<Self, ParseDiagnostic> {
        let chars: Vec<char> = text.chars().collect();
        let err = |i: usize, msg: &str| ParseDiagnostic::error(1, i + 1, msg);
        if chars.first() != Some(&'$') {
            return Err(err(0, "path must start with `$`"));
        }
        let mut steps = Vec::new();
        let mut i = 1;
        while i < chars.len() {
            match chars[i] {
                '.' => {
                    let start = i + 1;
                    let mut j = start;
                    while j < chars.len() && (chars[j].is_alphanumeric() || matches!(chars[j], '_' | '-' | '@')) {
                        j += 1;
                    }
                    if j == start {
                        return Err(err(i, "expected a field name after `.`"));
                    }
                    steps.push(Step::Field(chars[start..j].iter().collect()));
                    i = j;
                }
                '[' => {
                    let Some(close) = chars[i..].iter().position(|&c| c == ']') else {
                        return Err(err(i, "unclosed `[`"));
                    };
                    let inner: String = chars[i + 1..i + close].iter().collect();
                    steps.push(match inner.as_str() {
                        "*" => Step::Wildcard,
                        "{index}" => Step::CurrentIndex,
                        digits if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) => {
                            Step::Index(digits.parse().map_err(|_| err(i + 1, "index too large"))?)
                        }
                        _ => return Err(err(i + 1, "expected `*`, `{index}` or an index inside `[]`")),
                    });
                    i += close + 1;
                }
                c => return Err(err(i, &format!("unexpected `{c}` in path"))),
            }
        }
        Ok(PathExpr { steps })
    }

    pub fn has_wildcard(&self) -> bool {
        self.steps.contains(&Step::Wildcard)
    }

    /// Values reachable from `doc`. `[{index}]` uses `index`; without one it
    /// matches nothing.
    pub fn eval_at<'a>(&self, doc: &'a Value, index: Option<usize>) -> Vec<&'a Value> {
        let mut current = vec![doc];
        for step in &self.steps {
            let mut next = Vec::new();
            for v in current {
                match (step, v) {
                    (Step::Field(f), Value::Object(map)) => next.extend(map.get(f)),
                    (Step::Index(n), Value::Array(items)) => next.extend(items.get(*n)),
                    (Step::CurrentIndex, Value::Array(items)) => next.extend(index.and_then(|n| items.get(n))),
                    (Step::Wildcard, Value::Array(items)) => next.extend(items),
                    _ => {}
                }
            }
            current = next;
        }
        current
    }
}

impl fmt::Display for PathExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("$")?;
        for s in &self.steps {
            match s {
                Step::Field(name) => write!(f, ".{name}")?,
                Step::Index(n) => write!(f, "[{n}]")?,
                Step::Wildcard => f.write_str("[*]")?,
                Step::CurrentIndex => f.write_str("[{index}]")?,
            }
        }
        Ok(())
    }
}

/// Values reachable by `path`; a missing field gives an empty list.
pub fn eval_path<'a>(doc: &'a Value, path: &PathExpr) -> Vec<&'a Value> {
    path.eval_at(doc, None)
}
