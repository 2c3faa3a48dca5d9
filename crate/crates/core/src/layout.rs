use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

/// Rendered output: a non-empty list of lines without line breaks.
///
/// Alongside the text, a layout remembers the indentation level each line
/// after the first was started at. Two layouts compare equal when their
/// lines are equal; the indentation is bookkeeping for cost computation.
#[derive(Clone)]
pub struct Layout {
    lines: Vec<String>,
    indents: Vec<usize>,
}

impl Layout {
    /// A one-line layout.
    pub fn single(line: impl Into<String>) -> Self {
        Layout { lines: vec![line.into()], indents: vec![0] }
    }

    /// Builds a layout from plain lines, taking the leading spaces of every
    /// line after the first as its indentation.
    ///
    /// # Panics
    /// If `lines` is empty or a line contains a line break.
    pub fn from_lines<S: Into<String>>(lines: impl IntoIterator<Item = S>) -> Self {
        let lines: Vec<String> = lines.into_iter().map(Into::into).collect();
        assert!(!lines.is_empty(), "a layout has at least one line");
        assert!(lines.iter().all(|l| !l.contains('\n')), "layout lines cannot contain line breaks");
        let indents = lines
            .iter()
            .enumerate()
            .map(|(k, l)| if k == 0 { 0 } else { l.chars().take_while(|c| *c == ' ').count() })
            .collect();
        Layout { lines, indents }
    }

    pub(crate) fn from_parts(lines: Vec<String>, indents: Vec<usize>) -> Self {
        debug_assert_eq!(lines.len(), indents.len());
        debug_assert!(!lines.is_empty());
        Layout { lines, indents }
    }

    pub fn lines(&self) -> &[String] {
        &self.lines
    }

    /// Indentation level line `k` starts at; zero for the first line.
    pub fn indent(&self, k: usize) -> usize {
        self.indents[k]
    }

    pub fn line_count(&self) -> usize {
        self.lines.len()
    }

    /// Character count of the last line.
    pub fn last_width(&self) -> usize {
        self.lines.last().map_or(0, |l| l.chars().count())
    }

    /// Widest line in characters, counting the first line from column `c`.
    pub fn max_column(&self, c: usize) -> usize {
        self.lines.iter().enumerate().map(|(k, l)| l.chars().count() + if k == 0 { c } else { 0 }).max().unwrap_or(0)
    }

    /// Unaligned concatenation: `other` continues on the last line of `self`.
    pub fn append(mut self, other: Layout) -> Layout {
        let mut lines = other.lines.into_iter();
        let mut indents = other.indents.into_iter();
        if let Some(first) = lines.next() {
            indents.next();
            self.lines.last_mut().expect("non-empty").push_str(&first);
        }
        self.lines.extend(lines);
        self.indents.extend(indents);
        self
    }

    /// The lines joined with `\n`, without a trailing line break.
    pub fn to_text(&self) -> String {
        self.lines.join("\n")
    }
}

impl PartialEq for Layout {
    fn eq(&self, other: &Self) -> bool {
        self.lines == other.lines
    }
}

impl Eq for Layout {}

impl Hash for Layout {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.lines.hash(state);
    }
}

impl PartialOrd for Layout {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Layout {
    fn cmp(&self, other: &Self) -> Ordering {
        self.lines.cmp(&other.lines)
    }
}

impl fmt::Debug for Layout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.lines).finish()
    }
}

impl fmt::Display for Layout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, l) in self.lines.iter().enumerate() {
            if k > 0 {
                f.write_str("\n")?;
            }
            f.write_str(l)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn append_joins_last_and_first() {
        let a = Layout::from_lines(["ab", "  c"]);
        let b = Layout::from_lines(["d", "e"]);
        let c = a.append(b);
        assert_eq!(c.lines(), ["ab", "  cd", "e"]);
        assert_eq!(c.indent(1), 2);
        assert_eq!(c.indent(2), 0);
    }

    #[test]
    fn equality_ignores_indent_bookkeeping() {
        let a = Layout::from_parts(vec!["x".into(), "  y".into()], vec![0, 0]);
        let b = Layout::from_lines(["x", "  y"]);
        assert_eq!(a, b);
        assert_ne!(a.indent(1), b.indent(1));
    }

    #[test]
    fn max_column_offsets_first_line() {
        let l = Layout::from_lines(["abc", "de"]);
        assert_eq!(l.max_column(0), 3);
        assert_eq!(l.max_column(5), 8);
        assert_eq!(l.last_width(), 2);
    }
}
