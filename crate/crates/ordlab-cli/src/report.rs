//! Tabular report rendering. One row model feeds both encoders so CSV and
//! JSON carry identical field names and, after parsing, identical values:
//! floats are canonicalized to 12 significant digits and the JSON encoder
//! serializes the reparse of exactly that string.

use ordlab_core::Complex64;

#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    UInt(u64),
    UInt128(u128),
    Int(i64),
    Float(f64),
    Str(String),
    Empty,
}

#[derive(Debug, Clone, Default)]
pub struct Row {
    fields: Vec<(&'static str, Field)>,
}

impl Row {
    pub fn new() -> Self {
        Row { fields: Vec::new() }
    }

    pub fn push(mut self, name: &'static str, field: Field) -> Self {
        self.fields.push((name, field));
        self
    }

    pub fn uint(self, name: &'static str, v: u64) -> Self {
        self.push(name, Field::UInt(v))
    }

    pub fn int(self, name: &'static str, v: i64) -> Self {
        self.push(name, Field::Int(v))
    }

    pub fn float(self, name: &'static str, v: f64) -> Self {
        self.push(name, Field::Float(v))
    }

    pub fn opt_float(self, name: &'static str, v: Option<f64>) -> Self {
        match v {
            Some(v) => self.float(name, v),
            None => self.push(name, Field::Empty),
        }
    }

    pub fn text(self, name: &'static str, v: impl Into<String>) -> Self {
        self.push(name, Field::Str(v.into()))
    }

    /// The common (re, im, magnitude, bound, ratio, term_count) tail of
    /// an exponential-sum row.
    pub fn exp_sum(self, r: &ordlab_core::expsum::ExpSumResult) -> Self {
        self.complex(r.value)
            .float("magnitude", r.magnitude)
            .float("bound", r.bound)
            .float("ratio", r.ratio)
            .uint("term_count", r.term_count)
    }

    pub fn complex(self, v: Complex64) -> Self {
        self.float("re", v.re).float("im", v.im)
    }
}

/// 12 significant digits, the fixed width of every float the tool prints.
pub fn fmt12(v: f64) -> String {
    format!("{v:.11e}")
}

fn csv_escape(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn render_csv(rows: &[Row]) -> String {
    let Some(first) = rows.first() else {
        return String::new();
    };
    let mut out = String::new();
    let names: Vec<&str> = first.fields.iter().map(|(n, _)| *n).collect();
    out.push_str(&names.join(","));
    out.push('\n');
    for row in rows {
        debug_assert!(row.fields.iter().map(|(n, _)| *n).eq(names.iter().copied()));
        let cells: Vec<String> = row
            .fields
            .iter()
            .map(|(_, f)| match f {
                Field::UInt(v) => v.to_string(),
                Field::UInt128(v) => v.to_string(),
                Field::Int(v) => v.to_string(),
                Field::Float(v) => fmt12(*v),
                Field::Str(s) => csv_escape(s),
                Field::Empty => String::new(),
            })
            .collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

pub fn render_json(rows: &[Row]) -> String {
    let array: Vec<serde_json::Value> = rows
        .iter()
        .map(|row| {
            let mut obj = serde_json::Map::new();
            for (name, f) in &row.fields {
                let value = match f {
                    Field::UInt(v) => serde_json::Value::from(*v),
                    Field::UInt128(v) => match u64::try_from(*v) {
                        Ok(small) => serde_json::Value::from(small),
                        Err(_) => serde_json::Value::String(v.to_string()),
                    },
                    Field::Int(v) => serde_json::Value::from(*v),
                    Field::Float(v) => {
                        // Same value a CSV consumer parses.
                        let reparsed: f64 = fmt12(*v).parse().unwrap_or(*v);
                        serde_json::Number::from_f64(reparsed)
                            .map(serde_json::Value::Number)
                            .unwrap_or(serde_json::Value::Null)
                    }
                    Field::Str(s) => serde_json::Value::String(s.clone()),
                    Field::Empty => serde_json::Value::Null,
                };
                obj.insert((*name).to_string(), value);
            }
            serde_json::Value::Object(obj)
        })
        .collect();
    let mut out = serde_json::to_string_pretty(&serde_json::Value::Array(array))
        .expect("report rows always serialize");
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_and_json_carry_equal_values() {
        let rows = vec![Row::new()
            .uint("p", 7)
            .float("value", 0.548074905112081)
            .text("specs", "3:1;2:2")
            .opt_float("maybe", None)];
        let csv = render_csv(&rows);
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "p,value,specs,maybe");
        let cells: Vec<&str> = lines.next().unwrap().split(',').collect();
        let json: serde_json::Value = serde_json::from_str(&render_json(&rows)).unwrap();
        let obj = &json[0];
        assert_eq!(obj["p"].as_u64().unwrap(), cells[0].parse::<u64>().unwrap());
        assert_eq!(
            obj["value"].as_f64().unwrap(),
            cells[1].parse::<f64>().unwrap()
        );
        assert_eq!(obj["specs"].as_str().unwrap(), cells[2]);
        assert!(obj["maybe"].is_null());
        assert!(cells[3].is_empty());
    }

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(fmt12(1.5), "1.50000000000e0");
        assert_eq!(fmt12(0.5481), "5.48100000000e-1");
        let v = std::f64::consts::PI * 1e-7;
        let parsed: f64 = fmt12(v).parse().unwrap();
        assert!(((parsed - v) / v).abs() < 1e-11);
    }

    #[test]
    fn csv_escaping() {
        let rows = vec![Row::new().text("s", "a,b\"c")];
        assert_eq!(render_csv(&rows), "s\n\"a,b\"\"c\"\n");
    }
}
