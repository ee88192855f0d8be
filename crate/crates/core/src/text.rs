//! Whitespace rules shared by every adapter and serializer.

/// Collapses every run of Unicode whitespace to one ASCII space and trims
/// both ends.
pub fn normalize_ws(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for word in s.split_whitespace() {
        if !out.is_empty() {
            out.push(' ');
        }
        out.push_str(word);
    }
    out
}

/// True when `s` is already in the form [`normalize_ws`] produces.
pub fn is_normalized(s: &str) -> bool {
    let mut prev_space = true;
    for ch in s.chars() {
        if ch.is_whitespace() {
            if ch != ' ' || prev_space {
                return false;
            }
            prev_space = true;
        } else {
            prev_space = false;
        }
    }
    !s.ends_with(' ')
}

/// Checks the output rule for linearized strings: no leading or trailing
/// space and no two adjacent space characters.
pub fn is_single_spaced(s: &str) -> bool {
    !s.starts_with(' ') && !s.ends_with(' ') && !s.contains("  ")
}

/// Accumulates whitespace-separated tokens into one string.
#[derive(Debug, Default)]
pub(crate) struct TokenWriter {
    buf: String,
}

impl TokenWriter {
    pub(crate) fn new() -> Self {
        Self::default()
    }

    /// Appends a single token that is known not to contain whitespace.
    pub(crate) fn token(&mut self, tok: &str) {
        if tok.is_empty() {
            return;
        }
        if !self.buf.is_empty() {
            self.buf.push(' ');
        }
        self.buf.push_str(tok);
    }

    /// Appends every whitespace-separated word of `s`.
    pub(crate) fn words(&mut self, s: &str) {
        for w in s.split_whitespace() {
            self.token(w);
        }
    }

    pub(crate) fn finish(self) -> String {
        self.buf
    }
}
