//! Line-oriented index files: a magic line, a type line, then the body of a
//! corner index or ones table. Parse errors carry 1-based line numbers.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use thiserror::Error;

use crate::corner::CornerIndex;
use crate::tables::OnesTable;
use crate::text::ParikhVector;
use crate::QueryError;

/// First line of every index file.
pub const MAGIC: &str = "BJSM v1";

#[derive(Debug, Error)]
pub enum FormatError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
}

/// Either index flavour behind one query surface.
#[derive(Debug, Clone, PartialEq)]
pub enum IndexFile {
    Corner(CornerIndex),
    Table(OnesTable),
}

impl IndexFile {
    pub fn occurs(&self, pattern: ParikhVector) -> Result<bool, QueryError> {
        match self {
            IndexFile::Corner(index) => index.occurs(pattern),
            IndexFile::Table(table) => table.occurs(pattern),
        }
    }

    pub fn text_len(&self) -> usize {
        match self {
            IndexFile::Corner(index) => index.text_len(),
            IndexFile::Table(table) => table.text_len(),
        }
    }

    pub fn type_name(&self) -> &'static str {
        match self {
            IndexFile::Corner(_) => "corner",
            IndexFile::Table(_) => "table",
        }
    }

    pub fn write_to<W: Write>(&self, out: &mut W) -> io::Result<()> {
        match self {
            IndexFile::Corner(index) => index.write_to(out),
            IndexFile::Table(table) => table.write_to(out),
        }
    }

    pub fn save(&self, path: &Path) -> io::Result<()> {
        let mut buf = Vec::new();
        self.write_to(&mut buf)?;
        fs::write(path, buf)
    }

    pub fn load(path: &Path) -> Result<Self, FormatError> {
        Self::parse(&fs::read_to_string(path)?)
    }

    pub fn parse(content: &str) -> Result<Self, FormatError> {
        let mut cursor = Cursor::new(content);
        let magic = cursor.next_line()?;
        if magic != MAGIC {
            return Err(cursor.error(format!("expected magic {MAGIC:?}, found {magic:?}")));
        }
        let type_line = cursor.next_line()?;
        let index = match type_line {
            "type corner" => IndexFile::Corner(parse_corner(&mut cursor)?),
            "type table" => IndexFile::Table(parse_table(&mut cursor)?),
            other => {
                return Err(cursor.error(format!("unknown index type line {other:?}")));
            }
        };
        cursor.expect_end()?;
        Ok(index)
    }
}

fn parse_corner(cursor: &mut Cursor) -> Result<CornerIndex, FormatError> {
    let [n, total_zeros, total_ones] = cursor.tagged_line(["n", "zeros", "ones"])?;
    let [bucket_width] = cursor.tagged_line(["bucket"])?;
    let [max_zero_run, max_one_run] = cursor.tagged_line(["maxrun0", "maxrun1"])?;
    let lower = parse_points(cursor, "LG", total_zeros, total_ones)?;
    let upper = parse_points(cursor, "Lg", total_zeros, total_ones)?;
    let header_line = cursor.line_number();
    CornerIndex::from_parts(
        n,
        total_zeros,
        total_ones,
        bucket_width,
        max_zero_run,
        max_one_run,
        &lower,
        &upper,
    )
    .map_err(|message| FormatError::Malformed {
        line: header_line,
        message,
    })
}

/// Reads a `<tag> <count>` header and `count` point lines, checking the
/// staircase order as it goes so violations name the offending line.
fn parse_points(
    cursor: &mut Cursor,
    tag: &str,
    total_zeros: usize,
    total_ones: usize,
) -> Result<Vec<ParikhVector>, FormatError> {
    let [count] = cursor.tagged_line([tag])?;
    let mut points = Vec::with_capacity(count.min(1 << 20));
    for _ in 0..count {
        let line = cursor.next_line()?;
        let mut parts = line.split_whitespace();
        let point = match (parts.next(), parts.next(), parts.next()) {
            (Some(z), Some(o), None) => match (z.parse(), o.parse()) {
                (Ok(zeros), Ok(ones)) => ParikhVector::new(zeros, ones),
                _ => return Err(cursor.error(format!("expected two integers, found {line:?}"))),
            },
            _ => return Err(cursor.error(format!("expected two integers, found {line:?}"))),
        };
        if point.zeros > total_zeros || point.ones > total_ones {
            return Err(cursor.error(format!(
                "{tag} point {point} outside the text's symbol counts"
            )));
        }
        if let Some(&prev) = points.last() {
            let prev: ParikhVector = prev;
            if point.zeros <= prev.zeros || point.ones <= prev.ones {
                return Err(cursor.error(format!(
                    "{tag} points {prev} and {point} break the staircase order"
                )));
            }
        }
        points.push(point);
    }
    Ok(points)
}

fn parse_table(cursor: &mut Cursor) -> Result<OnesTable, FormatError> {
    let [n] = cursor.tagged_line(["n"])?;
    let max_one = parse_column(cursor, "maxone", n)?;
    let min_one = parse_column(cursor, "minone", n)?;
    for len in 1..=n {
        if min_one[len - 1] > max_one[len - 1] || max_one[len - 1] > len {
            return Err(cursor.error(format!(
                "table entries for length {len} out of order: min {} max {}",
                min_one[len - 1],
                max_one[len - 1]
            )));
        }
    }
    Ok(OnesTable::new(max_one, min_one))
}

fn parse_column(cursor: &mut Cursor, tag: &str, n: usize) -> Result<Vec<usize>, FormatError> {
    let line = cursor.next_line()?;
    let mut parts = line.split_whitespace();
    if parts.next() != Some(tag) {
        return Err(cursor.error(format!("expected a {tag:?} line, found {line:?}")));
    }
    let mut column = Vec::with_capacity(n.min(1 << 24));
    for part in parts {
        match part.parse() {
            Ok(v) => column.push(v),
            Err(_) => return Err(cursor.error(format!("bad integer {part:?} in {tag} line"))),
        }
    }
    if column.len() != n {
        return Err(cursor.error(format!(
            "{tag} holds {} entries, expected {n}",
            column.len()
        )));
    }
    Ok(column)
}

struct Cursor<'a> {
    lines: std::str::Lines<'a>,
    consumed: usize,
}

impl<'a> Cursor<'a> {
    fn new(content: &'a str) -> Self {
        Self {
            lines: content.lines(),
            consumed: 0,
        }
    }

    /// 1-based number of the last line handed out.
    fn line_number(&self) -> usize {
        self.consumed
    }

    fn next_line(&mut self) -> Result<&'a str, FormatError> {
        self.consumed += 1;
        self.lines.next().ok_or(FormatError::Malformed {
            line: self.consumed,
            message: "unexpected end of file".into(),
        })
    }

    fn expect_end(&mut self) -> Result<(), FormatError> {
        match self.lines.next() {
            None => Ok(()),
            Some(extra) => {
                self.consumed += 1;
                Err(self.error(format!("unexpected trailing content {extra:?}")))
            }
        }
    }

    fn error(&self, message: String) -> FormatError {
        FormatError::Malformed {
            line: self.consumed,
            message,
        }
    }

    /// Parses `tag value tag value ...` with the given tags in order.
    fn tagged_line<const N: usize>(&mut self, tags: [&str; N]) -> Result<[usize; N], FormatError> {
        let line = self.next_line()?;
        let mut parts = line.split_whitespace();
        let mut values = [0usize; N];
        for (i, tag) in tags.iter().enumerate() {
            if parts.next() != Some(tag) {
                return Err(self.error(format!("expected a {tag:?} field in {line:?}")));
            }
            let raw = parts.next().ok_or_else(|| {
                self.error(format!("missing value after {tag:?} in {line:?}"))
            })?;
            values[i] = raw.parse().map_err(|_| {
                self.error(format!("bad integer {raw:?} after {tag:?}"))
            })?;
        }
        if parts.next().is_some() {
            return Err(self.error(format!("unexpected trailing fields in {line:?}")));
        }
        Ok(values)
    }
}
