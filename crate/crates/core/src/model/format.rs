//! Line-oriented text format for models.
//!
//! ```text
//! # Krasner hyperfield on {0,1}
//! order 2
//! op add hyper
//! {0} {1}
//! {1} {0,1}
//! op mul composition
//! 0 0
//! 0 1
//! zero 0
//! one 1
//! ```
//!
//! A file with one `op` block is a single table; two blocks plus `zero`
//! (and optionally `one`) make a two-operation model. A hypermodule file
//! continues after the scalar block with a second `order` line opening the
//! module block (`op`, `zero`), then `action <p> <m>` and `p` lines of `m`
//! bare indices.

use std::fmt::Write as _;

use super::{
    CellSet, HyperTable, HypermoduleModel, Kind, Model, ModelError, TwoOpModel, MAX_ORDER,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

struct Line<'a> {
    no: usize,
    /// Byte offset of `text` within the original line, for column numbers.
    offset: usize,
    text: &'a str,
}

struct Token<'a> {
    column: usize,
    text: &'a str,
}

impl<'a> Line<'a> {
    fn err(&self, column: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.no,
            column,
            message: message.into(),
        }
    }

    /// Whitespace-separated tokens; a `{` token runs to the matching `}`.
    fn tokens(&self) -> Result<Vec<Token<'a>>, ParseError> {
        let bytes = self.text.as_bytes();
        let mut out = Vec::new();
        let mut i = 0;
        while i < bytes.len() {
            if bytes[i].is_ascii_whitespace() {
                i += 1;
                continue;
            }
            let start = i;
            if bytes[i] == b'{' {
                while i < bytes.len() && bytes[i] != b'}' {
                    i += 1;
                }
                if i == bytes.len() {
                    return Err(self.err(self.offset + start + 1, "unterminated `{`"));
                }
                i += 1;
            } else {
                while i < bytes.len() && !bytes[i].is_ascii_whitespace() {
                    i += 1;
                }
            }
            out.push(Token {
                column: self.offset + start + 1,
                text: &self.text[start..i],
            });
        }
        Ok(out)
    }
}

fn significant_lines(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let body = raw.split('#').next().unwrap_or("");
            let trimmed = body.trim_start();
            let offset = body.len() - trimmed.len();
            let trimmed = trimmed.trim_end();
            (!trimmed.is_empty()).then_some(Line {
                no: i + 1,
                offset,
                text: trimmed,
            })
        })
        .collect()
}

struct Cursor<'a> {
    lines: Vec<Line<'a>>,
    pos: usize,
    last_line: usize,
}

impl<'a> Cursor<'a> {
    fn peek_keyword(&self) -> Option<&'a str> {
        self.lines
            .get(self.pos)
            .and_then(|l| l.text.split_whitespace().next())
    }

    fn next(&mut self, what: &str) -> Result<&Line<'a>, ParseError> {
        match self.lines.get(self.pos) {
            Some(_) => {
                self.pos += 1;
                Ok(&self.lines[self.pos - 1])
            }
            None => Err(ParseError {
                line: self.last_line + 1,
                column: 1,
                message: format!("unexpected end of input, expected {what}"),
            }),
        }
    }
}

fn parse_index(
    tok: &Token<'_>,
    line: &Line<'_>,
    bound: usize,
    what: &str,
) -> Result<usize, ParseError> {
    let v: usize = tok
        .text
        .parse()
        .map_err(|_| line.err(tok.column, format!("expected {what}, found `{}`", tok.text)))?;
    if v >= bound {
        return Err(line.err(
            tok.column,
            format!("{what} {v} out of range for order {bound}"),
        ));
    }
    Ok(v)
}

fn keyword_line<'l>(
    line: &'l Line<'_>,
    keyword: &str,
    arity: usize,
) -> Result<Vec<Token<'l>>, ParseError> {
    let toks = line.tokens()?;
    if toks.first().map(|t| t.text) != Some(keyword) {
        return Err(line.err(
            toks.first().map_or(1, |t| t.column),
            format!("expected `{keyword}`"),
        ));
    }
    if toks.len() != arity + 1 {
        return Err(line.err(
            toks[0].column,
            format!(
                "`{keyword}` takes {arity} argument(s), found {}",
                toks.len() - 1
            ),
        ));
    }
    Ok(toks)
}

fn parse_order(cur: &mut Cursor<'_>) -> Result<usize, ParseError> {
    let line = cur.next("`order <n>` header")?;
    let toks = keyword_line(line, "order", 1)?;
    let n: usize = toks[1].text.parse().map_err(|_| {
        line.err(
            toks[1].column,
            format!("malformed order `{}`", toks[1].text),
        )
    })?;
    if n == 0 || n > MAX_ORDER {
        return Err(line.err(toks[1].column, format!("order {n} outside 1..={MAX_ORDER}")));
    }
    Ok(n)
}

fn parse_cell(
    tok: &Token<'_>,
    line: &Line<'_>,
    order: usize,
    kind: Kind,
) -> Result<CellSet, ParseError> {
    let text = tok.text;
    if let Some(inner) = text.strip_prefix('{') {
        let inner = inner
            .strip_suffix('}')
            .ok_or_else(|| line.err(tok.column, "malformed cell"))?;
        let mut set = CellSet::EMPTY;
        let mut prev: Option<usize> = None;
        if !inner.trim().is_empty() {
            for part in inner.split(',') {
                let part = part.trim();
                let v: usize = part
                    .parse()
                    .map_err(|_| line.err(tok.column, format!("malformed cell `{text}`")))?;
                if v >= order {
                    return Err(line.err(
                        tok.column,
                        format!("index {v} out of range for order {order} in `{text}`"),
                    ));
                }
                if prev.is_some_and(|p| p >= v) {
                    return Err(line.err(
                        tok.column,
                        format!("cell `{text}` is not strictly ascending"),
                    ));
                }
                prev = Some(v);
                set = set.with(v);
            }
        }
        if kind == Kind::Composition && set.len() != 1 {
            return Err(line.err(
                tok.column,
                format!("composition cell `{text}` is not a singleton"),
            ));
        }
        Ok(set)
    } else {
        if kind != Kind::Composition {
            return Err(line.err(
                tok.column,
                format!("bare index `{text}` only allowed in compositions"),
            ));
        }
        Ok(CellSet::singleton(parse_index(tok, line, order, "index")?))
    }
}

fn parse_op(cur: &mut Cursor<'_>, order: usize) -> Result<(String, HyperTable), ParseError> {
    let line = cur.next("`op <name> <kind>`")?;
    let toks = keyword_line(line, "op", 2)?;
    let name = toks[1].text.to_string();
    let kind: Kind = toks[2]
        .text
        .parse()
        .map_err(|e: String| line.err(toks[2].column, e))?;
    let mut table = HyperTable::new(order, kind).expect("order validated");
    for x in 0..order {
        let row = cur.next("table row")?;
        let cells = row.tokens()?;
        if cells.len() != order {
            return Err(row.err(1, format!("expected {order} cells, found {}", cells.len())));
        }
        for (y, tok) in cells.iter().enumerate() {
            table.set(x, y, parse_cell(tok, row, order, kind)?);
        }
    }
    Ok((name, table))
}

fn parse_constant(cur: &mut Cursor<'_>, keyword: &str, order: usize) -> Result<usize, ParseError> {
    let line = cur.next(keyword)?;
    let toks = keyword_line(line, keyword, 1)?;
    parse_index(&toks[1], line, order, keyword)
}

fn to_parse_error(e: ModelError, line: usize) -> ParseError {
    ParseError {
        line,
        column: 1,
        message: e.to_string(),
    }
}

/// Parse a model in the text format.
pub fn parse(text: &str) -> Result<Model, ParseError> {
    let lines = significant_lines(text);
    let last_line = text.lines().count();
    let mut cur = Cursor {
        lines,
        pos: 0,
        last_line,
    };

    let order = parse_order(&mut cur)?;
    let (name, table) = parse_op(&mut cur, order)?;
    if cur.peek_keyword() != Some("op") {
        if let Some(line) = cur.lines.get(cur.pos) {
            return Err(line.err(1, "unexpected content after single-table model"));
        }
        return Ok(Model::Table { name, table });
    }
    let (mul_name, mul) = parse_op(&mut cur, order)?;
    let header_line = cur.lines.get(cur.pos).map_or(last_line, |l| l.no);
    let zero = parse_constant(&mut cur, "zero", order)?;
    let one = if cur.peek_keyword() == Some("one") {
        Some(parse_constant(&mut cur, "one", order)?)
    } else {
        None
    };
    let scalars =
        TwoOpModel::new(table, mul, zero, one).map_err(|e| to_parse_error(e, header_line))?;

    if cur.peek_keyword() != Some("order") {
        if let Some(line) = cur.lines.get(cur.pos) {
            return Err(line.err(1, "unexpected content after two-operation model"));
        }
        return Ok(Model::TwoOp {
            names: [name, mul_name],
            model: scalars,
        });
    }

    let m = parse_order(&mut cur)?;
    let (madd_name, madd) = parse_op(&mut cur, m)?;
    let zero_m = parse_constant(&mut cur, "zero", m)?;
    let line = cur.next("`action <p> <m>`")?;
    let toks = keyword_line(line, "action", 2)?;
    let p_decl: usize = toks[1]
        .text
        .parse()
        .map_err(|_| line.err(toks[1].column, "malformed action size"))?;
    let m_decl: usize = toks[2]
        .text
        .parse()
        .map_err(|_| line.err(toks[2].column, "malformed action size"))?;
    if p_decl != order || m_decl != m {
        return Err(line.err(
            toks[0].column,
            format!("action is {p_decl}x{m_decl}, expected {order}x{m}"),
        ));
    }
    let action_line = line.no;
    let mut action = Vec::with_capacity(order * m);
    for _ in 0..order {
        let row = cur.next("action row")?;
        let toks = row.tokens()?;
        if toks.len() != m {
            return Err(row.err(1, format!("expected {m} entries, found {}", toks.len())));
        }
        for t in &toks {
            action.push(parse_index(t, row, m, "module element")?);
        }
    }
    if let Some(line) = cur.lines.get(cur.pos) {
        return Err(line.err(1, "unexpected content after hypermodule"));
    }
    let model = HypermoduleModel::new(scalars, madd, zero_m, action)
        .map_err(|e| to_parse_error(e, action_line))?;
    Ok(Model::Hypermodule {
        names: [name, mul_name, madd_name],
        model,
    })
}

fn write_op(out: &mut String, name: &str, table: &HyperTable) {
    let _ = writeln!(out, "op {name} {}", table.kind().as_str());
    for row in table.rows() {
        let cells: Vec<String> = row
            .iter()
            .map(|c| match (table.kind(), c.single()) {
                (Kind::Composition, Some(v)) => v.to_string(),
                _ => c.to_string(),
            })
            .collect();
        let _ = writeln!(out, "{}", cells.join(" "));
    }
}

fn write_two_op(out: &mut String, names: [&str; 2], m: &TwoOpModel) {
    let _ = writeln!(out, "order {}", m.order());
    write_op(out, names[0], m.add());
    write_op(out, names[1], m.mul());
    let _ = writeln!(out, "zero {}", m.zero());
    if let Some(one) = m.one() {
        let _ = writeln!(out, "one {one}");
    }
}

/// Serialize a model; cells list members in ascending order.
pub fn serialize(model: &Model) -> String {
    let mut out = String::new();
    match model {
        Model::Table { name, table } => {
            let _ = writeln!(out, "order {}", table.order());
            write_op(&mut out, name, table);
        }
        Model::TwoOp { names, model } => write_two_op(&mut out, [&names[0], &names[1]], model),
        Model::Hypermodule { names, model } => {
            write_two_op(&mut out, [&names[0], &names[1]], model.scalars());
            let m = model.madd().order();
            let _ = writeln!(out, "order {m}");
            write_op(&mut out, &names[2], model.madd());
            let _ = writeln!(out, "zero {}", model.zero_m());
            let _ = writeln!(out, "action {} {m}", model.scalars().order());
            for row in model.action().chunks(m) {
                let row: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                let _ = writeln!(out, "{}", row.join(" "));
            }
        }
    }
    out
}

/// Serialize a bare table under the default operation name.
pub fn serialize_table(table: &HyperTable) -> String {
    serialize(&Model::table("op", *table))
}

pub fn serialize_two_op(model: &TwoOpModel) -> String {
    serialize(&Model::two_op(*model))
}

/// Strip comments and collapse whitespace, for comparing files.
pub fn normalize(text: &str) -> String {
    significant_lines(text)
        .iter()
        .map(|l| l.text.split_whitespace().collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join("\n")
}
