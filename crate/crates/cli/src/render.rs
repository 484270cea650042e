//! Output rendering: trajectory tables in three formats, the step transcript,
//! the aligned bit matrix, and the compact tables the examples command emits.

use clap::ValueEnum;
use collatz_bits::accel::AccelRow;
use collatz_bits::bitnum::OddNum;
use collatz_bits::lengthpred::{hew_decompose, predict_delta, shortening_of};
use collatz_bits::stepper::{raw_step, syracuse_step, TrajectoryRow};
use serde_json::json;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Csv,
    Jsonl,
}

/// One rendered trajectory row, plain or accelerated; `w` stays empty for
/// plain rows.
#[derive(Debug, Clone)]
pub struct Row {
    pub index: usize,
    pub decimal: String,
    pub binary: String,
    pub bit_length: usize,
    pub delta: Option<i64>,
    pub k: usize,
    pub w: Option<usize>,
}

impl Row {
    pub fn from_plain(row: &TrajectoryRow) -> Row {
        Row {
            index: row.index,
            decimal: row.value.to_decimal(),
            binary: row.value.render_binary(),
            bit_length: row.bit_length,
            delta: row.delta,
            k: row.k,
            w: None,
        }
    }

    pub fn from_accel(row: &AccelRow) -> Row {
        Row {
            index: row.index,
            decimal: row.value.to_decimal(),
            binary: row.value.render_binary(),
            bit_length: row.bit_length,
            delta: row.delta,
            k: row.k,
            w: row.w,
        }
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.index.to_string(),
            self.decimal.clone(),
            self.binary.clone(),
            self.bit_length.to_string(),
            self.delta.map(|d| d.to_string()).unwrap_or_default(),
            self.k.to_string(),
            self.w.map(|w| w.to_string()).unwrap_or_default(),
        ]
    }
}

const ROW_COLUMNS: [&str; 7] = [
    "index",
    "decimal",
    "binary",
    "bit_length",
    "delta",
    "k",
    "w",
];

pub fn render_rows(rows: &[Row], format: Format) -> String {
    match format {
        Format::Table => render_table(&ROW_COLUMNS, rows.iter().map(Row::cells).collect()),
        Format::Csv => render_csv(&ROW_COLUMNS, rows.iter().map(Row::cells).collect()),
        Format::Jsonl => {
            let mut out = String::new();
            for r in rows {
                let line = json!({
                    "index": r.index,
                    "decimal": r.decimal,
                    "binary": r.binary,
                    "bit_length": r.bit_length,
                    "delta": r.delta,
                    "k": r.k,
                    "w": r.w,
                });
                out.push_str(&line.to_string());
                out.push('\n');
            }
            out
        }
    }
}

/// One prediction row: both predictors, the measured change, and agreement.
#[derive(Debug, Clone)]
pub struct PredictRow {
    pub decimal: String,
    pub binary: String,
    pub flag: bool,
    pub run: usize,
    pub delta: i64,
    /// `None` renders as "gap": the shortening table had no entry.
    pub shortening: Option<i64>,
    pub actual: i64,
    pub agree: bool,
}

impl PredictRow {
    /// Evaluates both predictors and one measured step for d.
    pub fn evaluate(d: &OddNum) -> PredictRow {
        let p = predict_delta(d);
        let shortening = shortening_of(&hew_decompose(d));
        let (next, _) = syracuse_step(d);
        let actual = next.bit_length() as i64 - d.bit_length() as i64;
        let agree = p.delta == actual && shortening == Some(-actual);
        PredictRow {
            decimal: d.to_decimal(),
            binary: d.render_binary(),
            flag: p.flag,
            run: p.run,
            delta: p.delta,
            shortening,
            actual,
            agree,
        }
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.decimal.clone(),
            self.binary.clone(),
            (self.flag as u8).to_string(),
            self.run.to_string(),
            self.delta.to_string(),
            self.shortening
                .map(|s| s.to_string())
                .unwrap_or_else(|| "gap".into()),
            self.actual.to_string(),
            self.agree.to_string(),
        ]
    }
}

const PREDICT_COLUMNS: [&str; 8] = [
    "decimal",
    "binary",
    "flag",
    "run",
    "delta",
    "shortening",
    "actual",
    "agree",
];

pub fn render_predictions(rows: &[PredictRow], format: Format) -> String {
    let cells: Vec<Vec<String>> = rows.iter().map(PredictRow::cells).collect();
    match format {
        Format::Table => render_table(&PREDICT_COLUMNS, cells),
        Format::Csv => render_csv(&PREDICT_COLUMNS, cells),
        Format::Jsonl => {
            let mut out = String::new();
            for r in rows {
                let line = json!({
                    "decimal": r.decimal,
                    "binary": r.binary,
                    "flag": r.flag as u8,
                    "run": r.run,
                    "delta": r.delta,
                    "shortening": r.shortening,
                    "actual": r.actual,
                    "agree": r.agree,
                });
                out.push_str(&line.to_string());
                out.push('\n');
            }
            out
        }
    }
}

fn render_table(columns: &[&str], rows: Vec<Vec<String>>) -> String {
    let mut widths: Vec<usize> = columns.iter().map(|c| c.len()).collect();
    for row in &rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let mut out = String::new();
    let mut push_line = |cells: &[String]| {
        let line = cells
            .iter()
            .enumerate()
            .map(|(i, c)| format!("{:<1$}", c, widths[i]))
            .collect::<Vec<_>>()
            .join(" | ");
        out.push_str(line.trim_end());
        out.push('\n');
    };
    push_line(&columns.iter().map(|c| c.to_string()).collect::<Vec<_>>());
    for row in rows {
        push_line(&row);
    }
    out
}

fn render_csv(columns: &[&str], rows: Vec<Vec<String>>) -> String {
    // no field here ever needs quoting: digits, [01] strings, "-", "true"
    let mut out = columns.join(",");
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Full transcript of one raw step: every automaton action, the raw value,
/// the trimmed next odd value.
pub fn render_transcript(d: &OddNum) -> String {
    let (raw, trace) = raw_step(d);
    let (next, w) = raw.strip_trailing_zeros();
    let width = trace.raw_bits.len();

    let mut out = String::new();
    out.push_str(&format!(
        "input: {} = {}\n",
        d.to_decimal(),
        d.render_binary()
    ));
    out.push_str(&format!("number row: 00{}\n", d.render_binary()));

    let mut written: Vec<bool> = Vec::with_capacity(width);
    for record in &trace.records {
        written.push(record.written);
        let so_far: String = written
            .iter()
            .rev()
            .map(|&b| if b { '1' } else { '0' })
            .collect();
        let pair = match record.pair {
            None => "--".to_string(),
            Some((hi, lo)) => format!("{}{}", hi as u8, lo as u8),
        };
        let announces_flag = record.pair.is_none() || record.flag_before != record.flag_after;
        let action = if announces_flag {
            format!(
                "write {}, set flag {}",
                record.written as u8, record.flag_after as u8
            )
        } else {
            format!("write {}", record.written as u8)
        };
        out.push_str(&format!(
            "{:>width$} | Flag={} | pair={} | {}\n",
            so_far, record.flag_after as u8, pair, action
        ));
    }

    out.push_str(&format!(
        "raw: {} = {}\n",
        raw.render_binary(),
        raw.to_decimal()
    ));
    out.push_str(&format!(
        "next: {} = {} (dropped {} trailing zero{})\n",
        next.render_binary(),
        next.to_decimal(),
        w,
        if w == 1 { "" } else { "s" }
    ));
    out.push_str(&format!("This is {} in base 10\n", next.to_decimal()));
    out
}

/// Single-line step summary for the untraced path.
pub fn render_step_line(d: &OddNum) -> String {
    let (next, w) = syracuse_step(d);
    format!(
        "{} -> {} (binary {}, dropped {} trailing zero{})\n",
        d.to_decimal(),
        next.to_decimal(),
        next.render_binary(),
        w,
        if w == 1 { "" } else { "s" }
    )
}

/// Input to the bit-matrix rendering: a value plus its lowest-zero position.
pub struct MatrixLine {
    pub decimal: String,
    pub bits: Vec<bool>,
    /// Lowest zero position; equals bit count for all-ones values, marking
    /// the virtual zero above the top bit.
    pub k: usize,
}

impl MatrixLine {
    pub fn from_plain(row: &TrajectoryRow) -> MatrixLine {
        MatrixLine {
            decimal: row.value.to_decimal(),
            bits: row.value.bits().to_vec(),
            k: row.k,
        }
    }

    pub fn from_accel(row: &AccelRow) -> MatrixLine {
        MatrixLine {
            decimal: row.value.to_decimal(),
            bits: row.value.bits().to_vec(),
            k: row.k,
        }
    }
}

/// Place-value-aligned bit layout: one row per value, LSBs in the rightmost
/// column, the lowest zero of each row bracketed. Columns above a value's
/// top bit stay blank.
pub fn render_matrix(lines: &[MatrixLine]) -> String {
    let width = lines
        .iter()
        .map(|l| l.bits.len().max(l.k + 1))
        .max()
        .unwrap_or(1);
    let label_width = lines.iter().map(|l| l.decimal.len()).max().unwrap_or(1);
    let mut out = String::new();
    for line in lines {
        let mut cells = String::with_capacity(3 * width);
        for p in (0..width).rev() {
            if p == line.k {
                cells.push_str("[0]");
            } else if p < line.bits.len() {
                cells.push_str(if line.bits[p] { " 1 " } else { " 0 " });
            } else {
                cells.push_str("   ");
            }
        }
        let rendered = format!("{:>label_width$} | {}", line.decimal, cells);
        out.push_str(rendered.trim_end());
        out.push('\n');
    }
    out
}

/// Compact golden table: decimal | binary | bit_length | delta, the delta
/// column absent on the first row.
pub fn render_compact_plain(rows: &[TrajectoryRow]) -> String {
    let mut out = String::new();
    for row in rows {
        let mut fields = vec![
            row.value.to_decimal(),
            row.value.render_binary(),
            row.bit_length.to_string(),
        ];
        if let Some(delta) = row.delta {
            fields.push(delta.to_string());
        }
        out.push_str(&fields.join(" | "));
        out.push('\n');
    }
    out
}

/// Compact golden table for accelerated rows, with labeled k and w fields.
pub fn render_compact_accel(rows: &[AccelRow]) -> String {
    let mut out = String::new();
    for row in rows {
        let mut fields = vec![
            row.value.to_decimal(),
            row.value.render_binary(),
            row.bit_length.to_string(),
        ];
        if let Some(delta) = row.delta {
            fields.push(delta.to_string());
        }
        fields.push(format!("k={}", row.k));
        if let Some(w) = row.w {
            fields.push(format!("w={}", w));
        }
        out.push_str(&fields.join(" | "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use collatz_bits::accel::accel_trajectory;
    use collatz_bits::stepper::syracuse_trajectory;

    fn odd(v: u64) -> OddNum {
        OddNum::from_u64(v).unwrap()
    }

    #[test]
    fn csv_header_is_pinned() {
        let traj = syracuse_trajectory(odd(31), 100);
        let rows: Vec<Row> = traj.rows.iter().map(Row::from_plain).collect();
        let csv = render_rows(&rows, Format::Csv);
        let mut lines = csv.lines();
        assert_eq!(
            lines.next(),
            Some("index,decimal,binary,bit_length,delta,k,w")
        );
        assert_eq!(lines.next(), Some("0,31,11111,5,,5,"));
        assert_eq!(lines.next(), Some("1,47,101111,6,1,4,"));
    }

    #[test]
    fn accel_csv_fills_w() {
        let traj = accel_trajectory(odd(63), 100);
        let rows: Vec<Row> = traj.rows.iter().map(Row::from_accel).collect();
        let csv = render_rows(&rows, Format::Csv);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[1], "0,63,111111,6,,6,");
        assert_eq!(lines[2], "1,91,1011011,7,1,2,3");
    }

    #[test]
    fn jsonl_fields_match_csv_names() {
        let traj = syracuse_trajectory(odd(31), 100);
        let rows: Vec<Row> = traj.rows.iter().map(Row::from_plain).collect();
        let jsonl = render_rows(&rows, Format::Jsonl);
        let first: serde_json::Value = serde_json::from_str(jsonl.lines().next().unwrap()).unwrap();
        assert_eq!(first["index"], 0);
        assert_eq!(first["decimal"], "31");
        assert_eq!(first["binary"], "11111");
        assert_eq!(first["bit_length"], 5);
        assert!(first["delta"].is_null());
        assert_eq!(first["k"], 5);
        assert!(first["w"].is_null());
    }

    #[test]
    fn table_has_header_and_all_rows() {
        let traj = syracuse_trajectory(odd(31), 100);
        let rows: Vec<Row> = traj.rows.iter().map(Row::from_plain).collect();
        let table = render_rows(&rows, Format::Table);
        assert_eq!(table.lines().count(), 41);
        assert!(table.lines().next().unwrap().starts_with("index | decimal"));
    }

    #[test]
    fn transcript_467() {
        let text = render_transcript(&odd(467));
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "input: 467 = 111010011");
        assert_eq!(lines[1], "number row: 00111010011");
        assert_eq!(lines.iter().filter(|l| l.contains("write")).count(), 11);
        assert_eq!(lines[lines.len() - 3], "raw: 10101111010 = 1402");
        assert!(lines[lines.len() - 2].contains("1010111101"));
        assert_eq!(lines[lines.len() - 1], "This is 701 in base 10");
    }

    #[test]
    fn transcript_of_one() {
        let text = render_transcript(&odd(1));
        assert!(text.contains("number row: 001"));
        assert!(text.contains("dropped 2 trailing zeros"));
        assert!(text.ends_with("This is 1 in base 10\n"));
    }

    #[test]
    fn step_line() {
        assert_eq!(
            render_step_line(&odd(467)),
            "467 -> 701 (binary 1010111101, dropped 1 trailing zero)\n"
        );
    }

    #[test]
    fn matrix_marks_lowest_zero() {
        let traj = syracuse_trajectory(odd(63), 100);
        let lines: Vec<MatrixLine> = traj.rows.iter().map(MatrixLine::from_plain).collect();
        let text = render_matrix(&lines);
        let first = text.lines().next().unwrap();
        // 63 is all ones: the bracket sits one column above its top bit
        assert!(first.starts_with("  63 | "), "{first}");
        assert!(first.ends_with("[0] 1  1  1  1  1  1"), "{first}");
        // every line carries exactly one marker
        for line in text.lines() {
            assert_eq!(line.matches("[0]").count(), 1, "{line}");
        }
        assert_eq!(text.lines().count(), 40);
    }

    #[test]
    fn compact_tables() {
        let traj = syracuse_trajectory(odd(31), 100);
        let text = render_compact_plain(&traj.rows);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "31 | 11111 | 5");
        assert_eq!(lines[1], "47 | 101111 | 6 | 1");
        assert_eq!(lines[39], "1 | 1 | 1 | -2");

        let accel = accel_trajectory(odd(63), 100);
        let text = render_compact_accel(&accel.rows);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "63 | 111111 | 6 | k=6");
        assert_eq!(lines[1], "91 | 1011011 | 7 | 1 | k=2 | w=3");
        // the final jump lands on 1 from 5: peak 8, three halvings
        assert_eq!(lines[15], "1 | 1 | 1 | -2 | k=1 | w=3");
    }

    #[test]
    fn predictions_row_agreement() {
        let row = PredictRow::evaluate(&odd(467));
        assert!(row.agree);
        assert_eq!((row.flag, row.run, row.delta), (true, 1, 1));
        assert_eq!(row.shortening, Some(-1));
        assert_eq!(row.actual, 1);

        let csv = render_predictions(&[row], Format::Csv);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(
            lines[0],
            "decimal,binary,flag,run,delta,shortening,actual,agree"
        );
        assert_eq!(lines[1], "467,111010011,1,1,1,-1,1,true");
    }
}
