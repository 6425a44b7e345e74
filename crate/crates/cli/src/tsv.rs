use std::fmt::Display;
use std::io::Write;

/// One tab-separated row; tabs and newlines inside fields become spaces.
pub fn row<T: Display>(fields: &[T]) {
    let line: Vec<String> = fields.iter().map(|f| f.to_string().replace(['\t', '\n'], " ")).collect();
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{}", line.join("\t"));
}

/// `[1, 2]` as `1,2`; empty lists as `-`.
pub fn list<T: Display>(xs: &[T]) -> String {
    if xs.is_empty() {
        return "-".into();
    }
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

pub fn opt<T: Display>(x: Option<T>) -> String {
    x.map_or_else(|| "-".into(), |v| v.to_string())
}
