use std::fmt;

/// Line-oriented verification output ending in `RESULT: PASS` or `RESULT: FAIL`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub title: String,
    pub lines: Vec<String>,
    pub failures: Vec<String>,
    /// Some search hit its state cap, so the verdict is not conclusive.
    pub incomplete: bool,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report { title: title.into(), ..Default::default() }
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    pub fn fail(&mut self, s: impl Into<String>) {
        self.failures.push(s.into());
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty() && !self.incomplete
    }

    /// Appends another report's lines under its title.
    pub fn absorb(&mut self, other: Report) {
        self.lines.push(format!("[{}]", other.title));
        self.lines.extend(other.lines);
        self.failures.extend(other.failures.into_iter().map(|f| format!("{}: {f}", other.title)));
        self.incomplete |= other.incomplete;
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# {}", self.title)?;
        for l in &self.lines {
            writeln!(f, "{l}")?;
        }
        for l in &self.failures {
            writeln!(f, "FAILURE {l}")?;
        }
        if self.incomplete {
            writeln!(f, "INCOMPLETE state limit reached")?;
        }
        writeln!(f, "RESULT: {}", if self.passed() { "PASS" } else { "FAIL" })
    }
}
