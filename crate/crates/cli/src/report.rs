use std::fmt::Write as _;

use clap::ValueEnum;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    #[default]
    Pretty,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Block {
    /// `key value` pairs.
    Fields(Vec<(String, String)>),
    Table { header: Vec<String>, rows: Vec<Vec<String>> },
    Line(String),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub blocks: Vec<Block>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn field(mut self, key: &str, value: impl ToString) -> Self {
        match self.blocks.last_mut() {
            Some(Block::Fields(f)) => f.push((key.to_string(), value.to_string())),
            _ => self.blocks.push(Block::Fields(vec![(key.to_string(), value.to_string())])),
        }
        self
    }

    pub fn table(mut self, header: &[&str], rows: Vec<Vec<String>>) -> Self {
        self.blocks.push(Block::Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows,
        });
        self
    }

    pub fn line(mut self, text: impl Into<String>) -> Self {
        self.blocks.push(Block::Line(text.into()));
        self
    }

    /// Value of the first field named `key`.
    pub fn get(&self, key: &str) -> Option<&str> {
        self.blocks.iter().find_map(|b| match b {
            Block::Fields(f) => f.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str()),
            _ => None,
        })
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        for (i, block) in self.blocks.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            match (block, format) {
                (Block::Line(s), _) => {
                    out.push_str(s);
                    out.push('\n');
                }
                (Block::Fields(f), Format::Tsv) => {
                    for (k, v) in f {
                        let _ = writeln!(out, "{k}\t{v}");
                    }
                }
                (Block::Fields(f), Format::Pretty) => {
                    let w = f.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
                    for (k, v) in f {
                        let _ = writeln!(out, "{:<w$}  {v}", format!("{k}:"), w = w + 1);
                    }
                }
                (Block::Table { header, rows }, Format::Tsv) => {
                    out.push_str(&header.join("\t"));
                    out.push('\n');
                    for r in rows {
                        out.push_str(&r.join("\t"));
                        out.push('\n');
                    }
                }
                (Block::Table { header, rows }, Format::Pretty) => {
                    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
                    for r in rows {
                        for (w, c) in widths.iter_mut().zip(r) {
                            *w = (*w).max(c.chars().count());
                        }
                    }
                    let fmt_row = |cells: &[String]| {
                        let padded: Vec<String> =
                            cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
                        padded.join("  ").trim_end().to_string()
                    };
                    out.push_str(&fmt_row(header));
                    out.push('\n');
                    let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
                    out.push_str(&rule.join("  "));
                    out.push('\n');
                    for r in rows {
                        out.push_str(&fmt_row(r));
                        out.push('\n');
                    }
                }
            }
        }
        out
    }
}
