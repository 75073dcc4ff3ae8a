//! The algebra file format.
//!
//! ```text
//! algebra <name>
//! size <n>
//! op <name> <arity>
//! <n^arity integers, row-major, last argument fastest>
//! ...
//! end
//! ```
//!
//! Parse errors carry line and column. Printing always produces the
//! canonical layout (tables in rows of `n` entries), and parsing a canonical
//! file then printing it reproduces it byte for byte.

use std::fmt;
use std::sync::Arc;

use conlat_core::algebra::{FiniteAlgebra, OperationTable};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for ParseError {}

struct Tokens<'a> {
    items: Vec<(usize, usize, &'a str)>,
    pos: usize,
}

impl<'a> Tokens<'a> {
    fn new(text: &'a str) -> Self {
        let mut items = Vec::new();
        for (li, line) in text.lines().enumerate() {
            let mut col = 0;
            for piece in line.split_whitespace() {
                let at = line[col..].find(piece).map(|o| col + o).unwrap_or(col);
                items.push((li + 1, at + 1, piece));
                col = at + piece.len();
            }
        }
        Tokens { items, pos: 0 }
    }

    fn peek(&self) -> Option<(usize, usize, &'a str)> {
        self.items.get(self.pos).copied()
    }

    fn next(&mut self) -> Option<(usize, usize, &'a str)> {
        let t = self.items.get(self.pos).copied();
        self.pos += 1;
        t
    }

    fn end_position(&self) -> (usize, usize) {
        self.items
            .last()
            .map(|&(l, c, t)| (l, c + t.len()))
            .unwrap_or((1, 1))
    }
}

fn err(line: usize, col: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        col,
        message: message.into(),
    }
}

/// Parses one algebra file.
pub fn parse_algebra(text: &str) -> Result<Arc<FiniteAlgebra>, ParseError> {
    let mut tk = Tokens::new(text);
    let expect_word = |tk: &mut Tokens, word: &str| -> Result<(), ParseError> {
        match tk.next() {
            Some((_, _, t)) if t == word => Ok(()),
            Some((l, c, t)) => Err(err(l, c, format!("expected `{word}`, found `{t}`"))),
            None => {
                let (l, c) = tk.end_position();
                Err(err(l, c, format!("expected `{word}`, found end of input")))
            }
        }
    };

    expect_word(&mut tk, "algebra")?;
    let name = match tk.next() {
        Some((_, _, t)) => t.to_string(),
        None => {
            let (l, c) = tk.end_position();
            return Err(err(l, c, "expected an algebra name"));
        }
    };

    expect_word(&mut tk, "size")?;
    let size = match tk.next() {
        Some((l, c, t)) => t
            .parse::<usize>()
            .map_err(|_| err(l, c, format!("expected a size, found `{t}`")))?,
        None => {
            let (l, c) = tk.end_position();
            return Err(err(l, c, "expected a size"));
        }
    };
    if size == 0 {
        return Err(err(1, 1, "size must be at least 1"));
    }

    let mut operations = Vec::new();
    loop {
        match tk.next() {
            Some((_, _, "end")) => break,
            Some((_, _, "op")) => {
                let (opname, name_pos) = match tk.next() {
                    Some((l, c, t)) => (t.to_string(), (l, c)),
                    None => {
                        let (l, c) = tk.end_position();
                        return Err(err(l, c, "expected an operation name"));
                    }
                };
                if operations
                    .iter()
                    .any(|op: &OperationTable| op.name == opname)
                {
                    return Err(err(
                        name_pos.0,
                        name_pos.1,
                        format!("duplicate operation name `{opname}`"),
                    ));
                }
                let arity = match tk.next() {
                    Some((l, c, t)) => t
                        .parse::<usize>()
                        .map_err(|_| err(l, c, format!("expected an arity, found `{t}`")))?,
                    None => {
                        let (l, c) = tk.end_position();
                        return Err(err(l, c, "expected an arity"));
                    }
                };
                let entries = size
                    .checked_pow(arity as u32)
                    .ok_or_else(|| err(name_pos.0, name_pos.1, "operation table too large"))?;
                let mut table = Vec::with_capacity(entries);
                for _ in 0..entries {
                    match tk.next() {
                        Some((l, c, t)) => {
                            // stop early with a clear message if a keyword
                            // shows up where an entry is expected
                            if t == "op" || t == "end" {
                                return Err(err(
                                    l,
                                    c,
                                    format!(
                                        "operation `{opname}` has too few table entries (expected {entries})"
                                    ),
                                ));
                            }
                            let v = t.parse::<usize>().map_err(|_| {
                                err(l, c, format!("expected a table entry, found `{t}`"))
                            })?;
                            if v >= size {
                                return Err(err(
                                    l,
                                    c,
                                    format!("table entry {v} out of range for size {size}"),
                                ));
                            }
                            table.push(v);
                        }
                        None => {
                            let (l, c) = tk.end_position();
                            return Err(err(
                                l,
                                c,
                                format!(
                                    "operation `{opname}` has too few table entries (expected {entries})"
                                ),
                            ));
                        }
                    }
                }
                operations.push(OperationTable::new(opname, arity, table));
            }
            Some((l, c, t)) => {
                return Err(err(l, c, format!("expected `op` or `end`, found `{t}`")))
            }
            None => {
                let (l, c) = tk.end_position();
                return Err(err(l, c, "expected `op` or `end`, found end of input"));
            }
        }
    }
    if let Some((l, c, t)) = tk.peek() {
        return Err(err(l, c, format!("unexpected content after `end`: `{t}`")));
    }

    FiniteAlgebra::new(name, size, operations)
        .map(Arc::new)
        .map_err(|e| err(1, 1, e.to_string()))
}

/// Prints an algebra in canonical layout.
pub fn print_algebra(alg: &FiniteAlgebra) -> String {
    let mut out = String::new();
    out.push_str(&format!("algebra {}\n", alg.name()));
    out.push_str(&format!("size {}\n", alg.size()));
    let n = alg.size();
    for op in alg.operations() {
        out.push_str(&format!("op {} {}\n", op.name, op.arity));
        if op.arity == 0 {
            out.push_str(&format!("{}\n", op.table[0]));
            continue;
        }
        for row in op.table.chunks(n) {
            let rendered: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            out.push_str(&rendered.join(" "));
            out.push('\n');
        }
    }
    out.push_str("end\n");
    out
}
