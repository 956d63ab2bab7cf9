use std::io::Read;
use std::path::PathBuf;

use clap::Args;
use zerosector::parse_coefficient_source;

/// Where coefficient literals come from.
#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct CoeffSource {
    /// Coefficient file: one literal per line (index 0 first, `#` comments) or a JSON array. `-` reads stdin.
    #[arg(long, value_name = "FILE")]
    pub coeffs: Option<PathBuf>,
    /// Inline coefficients, comma or space separated, index 0 first.
    #[arg(long, value_name = "LIST", allow_hyphen_values = true)]
    pub inline: Option<String>,
}

impl CoeffSource {
    /// The decimal literals, in index order.
    pub fn literals(&self) -> Result<Vec<String>, String> {
        let text = match (&self.coeffs, &self.inline) {
            (Some(path), _) if path.as_os_str() == "-" => {
                let mut s = String::new();
                std::io::stdin()
                    .read_to_string(&mut s)
                    .map_err(|e| format!("reading stdin: {e}"))?;
                s
            }
            (Some(path), _) => std::fs::read_to_string(path)
                .map_err(|e| format!("reading {}: {e}", path.display()))?,
            (None, Some(list)) => list.replace(',', "\n").replace(char::is_whitespace, "\n"),
            (None, None) => unreachable!("clap requires one source"),
        };
        parse_coefficient_source(&text).map_err(|e| e.to_string())
    }

    pub fn describe(&self) -> String {
        match (&self.coeffs, &self.inline) {
            (Some(path), _) => path.display().to_string(),
            (None, Some(list)) => list.clone(),
            (None, None) => String::new(),
        }
    }
}
