//! Grading, per-topic statistics, cohort arithmetic and the random-guessing
//! baseline.
//!
//! Response files (`.rsp`) are CSV with header `student_id,test_id,a1,...,aN`;
//! each mark is a capital letter or `-` for a blank. Score reports are CSV
//! with header `student_id,test_id,n_right,n_wrong,n_blank,score,passed`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::{self, Write};

use num_rational::Ratio;
use thiserror::Error;

use crate::assemble::{AnswerKey, KeyEntry, LETTERS};
use crate::emit::KEY_HEADER;
use crate::rng::QuizRng;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScoringRule {
    pub points_right: i64,
    pub points_wrong: i64,
    pub points_blank: i64,
    pub pass_threshold: i64,
}

impl Default for ScoringRule {
    fn default() -> Self {
        ScoringRule { points_right: 3, points_wrong: -1, points_blank: 0, pass_threshold: 30 }
    }
}

impl ScoringRule {
    pub fn new(points_right: i64, points_wrong: i64, points_blank: i64, pass_threshold: i64) -> Result<Self, ScoreError> {
        if points_right <= points_wrong {
            return Err(ScoreError::Rule(format!(
                "points for a right answer ({points_right}) must exceed points for a wrong one ({points_wrong})"
            )));
        }
        Ok(ScoringRule { points_right, points_wrong, points_blank, pass_threshold })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mark {
    Letter(char),
    Blank,
}

impl fmt::Display for Mark {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mark::Letter(c) => write!(f, "{c}"),
            Mark::Blank => f.write_str("-"),
        }
    }
}

impl std::str::FromStr for Mark {
    type Err = String;

    fn from_str(s: &str) -> Result<Mark, String> {
        match s.trim() {
            "-" => Ok(Mark::Blank),
            t if t.len() == 1 && LETTERS.contains(t) => Ok(Mark::Letter(t.chars().next().unwrap())),
            t => Err(format!("invalid mark {t:?} (expected A-Z or -)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResponseSheet {
    pub student_id: String,
    pub test_id: String,
    pub marks: Vec<Mark>,
}

impl ResponseSheet {
    /// The sheet a student copying the key would hand in.
    pub fn from_key(student_id: impl Into<String>, k: &AnswerKey) -> ResponseSheet {
        ResponseSheet {
            student_id: student_id.into(),
            test_id: k.test_id.clone(),
            marks: k.entries.iter().map(|e| Mark::Letter(e.letter)).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Right,
    Wrong,
    Blank,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScoreReport {
    pub student_id: String,
    pub test_id: String,
    pub n_right: usize,
    pub n_wrong: usize,
    pub n_blank: usize,
    pub score: i64,
    pub passed: bool,
    pub per_question: Vec<Verdict>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScoreError {
    #[error("invalid scoring rule: {0}")]
    Rule(String),
    #[error("student {student:?}: no key for test {test_id:?}")]
    UnknownTest { student: String, test_id: String },
    #[error("student {student:?}: {found} marks for a {expected}-question test")]
    LengthMismatch { student: String, expected: usize, found: usize },
    #[error("student {student:?}, position {position}: mark {mark} outside A-{last}")]
    InvalidMark { student: String, position: usize, mark: char, last: char },
    #[error("granted position {position} outside 1..={len}")]
    GrantedOutOfRange { position: usize, len: usize },
    #[error("student {0:?} appears twice in one sitting")]
    DuplicateStudent(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

fn verdicts(r: &ResponseSheet, k: &AnswerKey, granted: &BTreeSet<usize>) -> Result<Vec<Verdict>, ScoreError> {
    if r.test_id != k.test_id {
        return Err(ScoreError::UnknownTest { student: r.student_id.clone(), test_id: r.test_id.clone() });
    }
    if r.marks.len() != k.entries.len() {
        return Err(ScoreError::LengthMismatch {
            student: r.student_id.clone(),
            expected: k.entries.len(),
            found: r.marks.len(),
        });
    }
    if let Some(&p) = granted.iter().find(|&&p| p == 0 || p > k.entries.len()) {
        return Err(ScoreError::GrantedOutOfRange { position: p, len: k.entries.len() });
    }
    let mut out = Vec::with_capacity(r.marks.len());
    for (i, (m, e)) in r.marks.iter().zip(&k.entries).enumerate() {
        if let Mark::Letter(c) = *m {
            let last = LETTERS.as_bytes()[e.choices - 1] as char;
            if c > last {
                return Err(ScoreError::InvalidMark { student: r.student_id.clone(), position: i + 1, mark: c, last });
            }
        }
        out.push(if granted.contains(&(i + 1)) {
            Verdict::Right
        } else {
            match *m {
                Mark::Blank => Verdict::Blank,
                Mark::Letter(c) if c == e.letter => Verdict::Right,
                Mark::Letter(_) => Verdict::Wrong,
            }
        });
    }
    Ok(out)
}

/// Grades one sheet. `granted` holds 1-based positions credited as right
/// for everybody, whatever was marked.
pub fn score_sheet(
    r: &ResponseSheet,
    k: &AnswerKey,
    rule: &ScoringRule,
    granted: &BTreeSet<usize>,
) -> Result<ScoreReport, ScoreError> {
    let per_question = verdicts(r, k, granted)?;
    let count = |v| per_question.iter().filter(|&&x| x == v).count();
    let (n_right, n_wrong, n_blank) = (count(Verdict::Right), count(Verdict::Wrong), count(Verdict::Blank));
    let score = rule.points_right * n_right as i64 + rule.points_wrong * n_wrong as i64 + rule.points_blank * n_blank as i64;
    Ok(ScoreReport {
        student_id: r.student_id.clone(),
        test_id: r.test_id.clone(),
        n_right,
        n_wrong,
        n_blank,
        score,
        passed: score >= rule.pass_threshold,
        per_question,
    })
}

fn find_key<'a>(keys: &'a [AnswerKey], r: &ResponseSheet) -> Result<&'a AnswerKey, ScoreError> {
    keys.iter()
        .find(|k| k.test_id == r.test_id)
        .ok_or_else(|| ScoreError::UnknownTest { student: r.student_id.clone(), test_id: r.test_id.clone() })
}

/// Grades every sheet against the key of its test copy.
pub fn score_sheets(
    sheets: &[ResponseSheet],
    keys: &[AnswerKey],
    rule: &ScoringRule,
    granted: &BTreeSet<usize>,
) -> Result<Vec<ScoreReport>, ScoreError> {
    sheets.iter().map(|r| score_sheet(r, find_key(keys, r)?, rule, granted)).collect()
}

/// Right, blank and wrong answer counts for one topic group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupStats {
    pub group: String,
    pub n_right: u64,
    pub n_blank: u64,
    pub n_wrong: u64,
}

impl GroupStats {
    pub fn total(&self) -> u64 {
        self.n_right + self.n_blank + self.n_wrong
    }

    fn fraction(&self, n: u64) -> Ratio<u64> {
        if self.total() == 0 {
            Ratio::from_integer(0)
        } else {
            Ratio::new(n, self.total())
        }
    }

    pub fn right(&self) -> Ratio<u64> {
        self.fraction(self.n_right)
    }

    pub fn blank(&self) -> Ratio<u64> {
        self.fraction(self.n_blank)
    }

    pub fn wrong(&self) -> Ratio<u64> {
        self.fraction(self.n_wrong)
    }
}

/// `r` to two decimals, halves rounded away from zero.
pub fn round2(r: Ratio<u64>) -> String {
    let hundredths = (r.numer() * 200 + r.denom()) / (2 * r.denom());
    format!("{}.{:02}", hundredths / 100, hundredths % 100)
}

/// Per-group totals over all sheets, groups in order of first appearance
/// in the keys. Each sheet is matched to its key by test id.
pub fn group_statistics(sheets: &[ResponseSheet], keys: &[AnswerKey]) -> Result<Vec<GroupStats>, ScoreError> {
    let mut stats: Vec<GroupStats> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    for k in keys {
        for e in &k.entries {
            index.entry(e.group.clone()).or_insert_with(|| {
                stats.push(GroupStats { group: e.group.clone(), n_right: 0, n_blank: 0, n_wrong: 0 });
                stats.len() - 1
            });
        }
    }
    let none = BTreeSet::new();
    for r in sheets {
        let k = find_key(keys, r)?;
        for (v, e) in verdicts(r, k, &none)?.into_iter().zip(&k.entries) {
            let s = &mut stats[index[&e.group]];
            match v {
                Verdict::Right => s.n_right += 1,
                Verdict::Blank => s.n_blank += 1,
                Verdict::Wrong => s.n_wrong += 1,
            }
        }
    }
    Ok(stats)
}

/// Two sittings compared person by person.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CohortReport {
    pub participants_first: usize,
    pub participants_second: usize,
    pub both: usize,
    pub only_first: usize,
    pub only_second: usize,
    pub distinct: usize,
    pub passed_first: usize,
    pub passed_second: usize,
    pub pass_pass: usize,
    pub pass_fail: usize,
    pub fail_pass: usize,
    pub fail_fail: usize,
}

impl fmt::Display for CohortReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "participants  first {}  second {}", self.participants_first, self.participants_second)?;
        writeln!(f, "distinct      {}", self.distinct)?;
        writeln!(f, "both          {}", self.both)?;
        writeln!(f, "only first    {}", self.only_first)?;
        writeln!(f, "only second   {}", self.only_second)?;
        writeln!(f, "passed        first {}  second {}", self.passed_first, self.passed_second)?;
        writeln!(f, "among both    pass/pass {}  pass/fail {}  fail/pass {}  fail/fail {}", self.pass_pass, self.pass_fail, self.fail_pass, self.fail_fail)
    }
}

fn by_student(reports: &[ScoreReport]) -> Result<BTreeMap<&str, bool>, ScoreError> {
    let mut out = BTreeMap::new();
    for r in reports {
        if out.insert(r.student_id.as_str(), r.passed).is_some() {
            return Err(ScoreError::DuplicateStudent(r.student_id.clone()));
        }
    }
    Ok(out)
}

pub fn cohort_statistics(first: &[ScoreReport], second: &[ScoreReport]) -> Result<CohortReport, ScoreError> {
    let a = by_student(first)?;
    let b = by_student(second)?;
    let mut c = CohortReport {
        participants_first: a.len(),
        participants_second: b.len(),
        passed_first: a.values().filter(|&&p| p).count(),
        passed_second: b.values().filter(|&&p| p).count(),
        ..CohortReport::default()
    };
    for (id, &p1) in &a {
        let Some(&p2) = b.get(id) else { continue };
        c.both += 1;
        match (p1, p2) {
            (true, true) => c.pass_pass += 1,
            (true, false) => c.pass_fail += 1,
            (false, true) => c.fail_pass += 1,
            (false, false) => c.fail_fail += 1,
        }
    }
    c.only_first = c.participants_first - c.both;
    c.only_second = c.participants_second - c.both;
    c.distinct = c.participants_first + c.participants_second - c.both;
    Ok(c)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GuessStats {
    pub mean: f64,
    pub sd: f64,
    pub closed_form_mean: f64,
    pub closed_form_sd: f64,
}

/// Scores of students who answer every question uniformly at random.
/// `sd` is the sample standard deviation over trials.
pub fn random_guess_simulation(
    rule: &ScoringRule,
    n_questions: usize,
    n_choices: usize,
    n_trials: usize,
    seed: u64,
) -> GuessStats {
    assert!(n_trials >= 1 && n_choices >= 1);
    let p = 1.0 / n_choices as f64;
    let (r, w) = (rule.points_right as f64, rule.points_wrong as f64);
    let closed_form_mean = n_questions as f64 * (p * r + (1.0 - p) * w);
    let closed_form_sd = (n_questions as f64 * p * (1.0 - p)).sqrt() * (r - w).abs();

    let mut rng = QuizRng::new(seed, "guess-sim");
    let (mut mean, mut m2) = (0.0, 0.0);
    for t in 0..n_trials {
        let right = (0..n_questions).filter(|_| rng.index(n_choices) == 0).count() as i64;
        let x = (rule.points_right * right + rule.points_wrong * (n_questions as i64 - right)) as f64;
        let d = x - mean;
        mean += d / (t + 1) as f64;
        m2 += d * (x - mean);
    }
    let sd = if n_trials > 1 { (m2 / (n_trials - 1) as f64).sqrt() } else { 0.0 };
    GuessStats { mean, sd, closed_form_mean, closed_form_sd }
}

/// Groups by descending right fraction; equal fractions keep their order.
pub fn chart_order(stats: &[GroupStats]) -> Vec<&GroupStats> {
    let mut v: Vec<&GroupStats> = stats.iter().collect();
    v.sort_by(|a, b| b.right().cmp(&a.right()));
    v
}

/// Splits `width` glyphs among the fractions by largest remainder, so each
/// segment is within one glyph of exact and the total is `width` whenever
/// the fractions sum to 1.
pub fn glyph_counts(fractions: [Ratio<u64>; 3], width: u64) -> [u64; 3] {
    let exact = fractions.map(|f| f * width);
    let mut counts = exact.map(|e| e.to_integer());
    let total: Ratio<u64> = fractions.iter().sum();
    let target = (total * width).round().to_integer();
    let mut order = [0, 1, 2];
    order.sort_by(|&i, &j| exact[j].fract().cmp(&exact[i].fract()));
    let mut k = 0;
    while counts.iter().sum::<u64>() < target {
        counts[order[k % 3]] += 1;
        k += 1;
    }
    counts
}

/// Stacked right/blank/wrong bars as monospace text, `#` for right, `.`
/// for blank and `x` for wrong.
pub fn render_bar_chart(stats: &[GroupStats], width: u64) -> String {
    let ordered = chart_order(stats);
    let label = ordered.iter().map(|s| s.group.chars().count()).max().unwrap_or(0);
    let mut out = String::new();
    for s in ordered {
        let [r, b, w] = glyph_counts([s.right(), s.blank(), s.wrong()], width);
        let bar: String = "#".repeat(r as usize) + &".".repeat(b as usize) + &"x".repeat(w as usize);
        writeln!(
            out,
            "{:<label$} |{bar:<width$}| {} {} {}",
            s.group,
            round2(s.right()),
            round2(s.blank()),
            round2(s.wrong()),
            width = width as usize
        )
        .unwrap();
    }
    out.push_str("# right  . blank  x wrong\n");
    out
}

fn svg_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// The same chart as vertical stacked bars in SVG: right at the bottom,
/// blank in the middle, wrong on top.
pub fn render_bar_chart_svg(stats: &[GroupStats]) -> String {
    const BAR: f64 = 40.0;
    const GAP: f64 = 20.0;
    const HEIGHT: f64 = 200.0;
    const TOP: f64 = 10.0;
    const BOTTOM: f64 = 110.0;
    let ordered = chart_order(stats);
    let width = GAP + ordered.len() as f64 * (BAR + GAP);
    let mut out = String::new();
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{}\" font-family=\"sans-serif\" font-size=\"11\">",
        TOP + HEIGHT + BOTTOM
    )
    .unwrap();
    for (i, s) in ordered.iter().enumerate() {
        let x = GAP + i as f64 * (BAR + GAP);
        let mut base = TOP + HEIGHT;
        for (f, colour, name) in [(s.right(), "green", "right"), (s.blank(), "blue", "blank"), (s.wrong(), "red", "wrong")] {
            let h = *f.numer() as f64 / *f.denom() as f64 * HEIGHT;
            base -= h;
            writeln!(
                out,
                "  <rect x=\"{x}\" y=\"{base:.2}\" width=\"{BAR}\" height=\"{h:.2}\" fill=\"{colour}\"><title>{} {name} {}</title></rect>",
                svg_escape(&s.group),
                round2(f)
            )
            .unwrap();
        }
        let lx = x + BAR / 2.0;
        let ly = TOP + HEIGHT + 12.0;
        writeln!(
            out,
            "  <text x=\"{lx}\" y=\"{ly}\" transform=\"rotate(45 {lx} {ly})\">{}</text>",
            svg_escape(&s.group)
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    out
}

fn parse_err(line: usize, message: impl Into<String>) -> ScoreError {
    ScoreError::Parse { line, message: message.into() }
}

fn csv_line(e: &csv::Error) -> usize {
    e.position().map_or(0, |p| p.line() as usize)
}

/// Reads a response file.
pub fn parse_responses(text: &str) -> Result<Vec<ResponseSheet>, ScoreError> {
    let mut rdr = csv::ReaderBuilder::new().flexible(true).trim(csv::Trim::All).from_reader(text.as_bytes());
    let header = rdr.headers().map_err(|e| parse_err(csv_line(&e), e.to_string()))?.clone();
    if header.get(0) != Some("student_id") || header.get(1) != Some("test_id") {
        return Err(parse_err(1, "header must start with student_id,test_id"));
    }
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| parse_err(csv_line(&e), e.to_string()))?;
        let line = rec.position().map_or(0, |p| p.line() as usize);
        if rec.len() < 2 {
            return Err(parse_err(line, "expected student_id,test_id,marks..."));
        }
        let marks = rec.iter().skip(2).map(|m| m.parse::<Mark>().map_err(|e| parse_err(line, e))).collect::<Result<_, _>>()?;
        out.push(ResponseSheet { student_id: rec[0].to_string(), test_id: rec[1].to_string(), marks });
    }
    Ok(out)
}

/// Writes a response file; the header has as many mark columns as the
/// longest sheet.
pub fn render_responses(sheets: &[ResponseSheet]) -> String {
    let n = sheets.iter().map(|s| s.marks.len()).max().unwrap_or(0);
    let mut wtr = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
    let header: Vec<String> = ["student_id".to_string(), "test_id".to_string()]
        .into_iter()
        .chain((1..=n).map(|i| format!("a{i}")))
        .collect();
    wtr.write_record(&header).unwrap();
    for s in sheets {
        let row: Vec<String> =
            [s.student_id.clone(), s.test_id.clone()].into_iter().chain(s.marks.iter().map(Mark::to_string)).collect();
        wtr.write_record(&row).unwrap();
    }
    String::from_utf8(wtr.into_inner().unwrap()).unwrap()
}

pub const REPORT_HEADER: [&str; 7] = ["student_id", "test_id", "n_right", "n_wrong", "n_blank", "score", "passed"];

pub fn render_reports(reports: &[ScoreReport]) -> String {
    let mut wtr = csv::Writer::from_writer(Vec::new());
    wtr.write_record(REPORT_HEADER).unwrap();
    for r in reports {
        wtr.write_record([
            r.student_id.clone(),
            r.test_id.clone(),
            r.n_right.to_string(),
            r.n_wrong.to_string(),
            r.n_blank.to_string(),
            r.score.to_string(),
            r.passed.to_string(),
        ])
        .unwrap();
    }
    String::from_utf8(wtr.into_inner().unwrap()).unwrap()
}

/// Reads a score report file. Per-question verdicts are not stored there
/// and come back empty.
pub fn parse_reports(text: &str) -> Result<Vec<ScoreReport>, ScoreError> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let header = rdr.headers().map_err(|e| parse_err(csv_line(&e), e.to_string()))?;
    if header.iter().ne(REPORT_HEADER) {
        return Err(parse_err(1, format!("header must be {}", REPORT_HEADER.join(","))));
    }
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| parse_err(csv_line(&e), e.to_string()))?;
        let line = rec.position().map_or(0, |p| p.line() as usize);
        let num = |i: usize| rec[i].parse::<usize>().map_err(|_| parse_err(line, format!("bad {} {:?}", REPORT_HEADER[i], &rec[i])));
        out.push(ScoreReport {
            student_id: rec[0].to_string(),
            test_id: rec[1].to_string(),
            n_right: num(2)?,
            n_wrong: num(3)?,
            n_blank: num(4)?,
            score: rec[5].parse().map_err(|_| parse_err(line, format!("bad score {:?}", &rec[5])))?,
            passed: rec[6].parse().map_err(|_| parse_err(line, format!("bad passed {:?}", &rec[6])))?,
            per_question: Vec::new(),
        });
    }
    Ok(out)
}

/// Reads a key file (one or more copies) back into keys, in file order.
pub fn parse_keys(text: &str) -> Result<Vec<AnswerKey>, ScoreError> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h.trim_end() == KEY_HEADER => {}
        _ => return Err(parse_err(1, format!("header must be {KEY_HEADER:?}"))),
    }
    let mut keys: Vec<AnswerKey> = Vec::new();
    for (n, line) in lines {
        let line_no = n + 1;
        if line.trim().is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split('\t').collect();
        let [test_id, position, group, problem, letter, choices] = f[..] else {
            return Err(parse_err(line_no, format!("expected 6 tab-separated fields, found {}", f.len())));
        };
        let position: usize = position.parse().map_err(|_| parse_err(line_no, format!("bad position {position:?}")))?;
        let choices: usize = choices
            .parse()
            .ok()
            .filter(|c| (2..=LETTERS.len()).contains(c))
            .ok_or_else(|| parse_err(line_no, format!("bad choices {choices:?}")))?;
        let letter = match letter.parse::<Mark>() {
            Ok(Mark::Letter(c)) if ((c as u8 - b'A') as usize) < choices => c,
            _ => return Err(parse_err(line_no, format!("bad correct_letter {letter:?}"))),
        };
        if keys.last().map_or(true, |k| k.test_id != test_id) {
            if keys.iter().any(|k| k.test_id == test_id) {
                return Err(parse_err(line_no, format!("rows of {test_id} are not contiguous")));
            }
            keys.push(AnswerKey { test_id: test_id.to_string(), entries: Vec::new() });
        }
        let k = keys.last_mut().unwrap();
        if position != k.entries.len() + 1 {
            return Err(parse_err(line_no, format!("expected position {}, found {position}", k.entries.len() + 1)));
        }
        k.entries.push(KeyEntry { group: group.to_string(), problem: problem.to_string(), letter, choices });
    }
    Ok(keys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::emit::render_keys;

    fn key(n: usize) -> AnswerKey {
        AnswerKey {
            test_id: "t-1".into(),
            entries: (0..n)
                .map(|i| KeyEntry {
                    group: format!("g{}", i % 3),
                    problem: format!("p{i}"),
                    letter: LETTERS.as_bytes()[i % 4] as char,
                    choices: 4,
                })
                .collect(),
        }
    }

    fn sheet(marks: Vec<Mark>) -> ResponseSheet {
        ResponseSheet { student_id: "s".into(), test_id: "t-1".into(), marks }
    }

    fn wrong_marks(k: &AnswerKey) -> Vec<Mark> {
        k.entries.iter().map(|e| Mark::Letter(if e.letter == 'A' { 'B' } else { 'A' })).collect()
    }

    #[test]
    fn score_extremes() {
        let k = key(20);
        let rule = ScoringRule::default();
        let none = BTreeSet::new();
        let all_right = score_sheet(&ResponseSheet::from_key("s", &k), &k, &rule, &none).unwrap();
        assert_eq!((all_right.score, all_right.passed), (60, true));
        let blank = score_sheet(&sheet(vec![Mark::Blank; 20]), &k, &rule, &none).unwrap();
        assert_eq!((blank.score, blank.passed, blank.n_blank), (0, false, 20));
        let wrong = score_sheet(&sheet(wrong_marks(&k)), &k, &rule, &none).unwrap();
        assert_eq!(wrong.score, -20);
    }

    #[test]
    fn granted_blank_counts_right() {
        let k = key(20);
        let granted: BTreeSet<usize> = [7].into();
        let r = score_sheet(&sheet(vec![Mark::Blank; 20]), &k, &ScoringRule::default(), &granted).unwrap();
        assert_eq!((r.n_right, r.n_blank, r.score), (1, 19, 3));
        assert_eq!(r.per_question[6], Verdict::Right);
    }

    #[test]
    fn pass_threshold_is_inclusive() {
        let k = key(20);
        let rule = ScoringRule::default();
        // 10 right, 10 blank = 30; 10 right, 1 wrong = 29
        let mut marks: Vec<Mark> = k.entries.iter().map(|e| Mark::Letter(e.letter)).collect();
        marks[10..].fill(Mark::Blank);
        assert!(score_sheet(&sheet(marks.clone()), &k, &rule, &BTreeSet::new()).unwrap().passed);
        marks[10] = wrong_marks(&k)[10];
        let r = score_sheet(&sheet(marks), &k, &rule, &BTreeSet::new()).unwrap();
        assert_eq!((r.score, r.passed), (29, false));
    }

    #[test]
    fn scoring_errors() {
        let k = key(4);
        let rule = ScoringRule::default();
        let none = BTreeSet::new();
        assert!(matches!(score_sheet(&sheet(vec![Mark::Blank; 3]), &k, &rule, &none), Err(ScoreError::LengthMismatch { .. })));
        let mut other = sheet(vec![Mark::Blank; 4]);
        other.test_id = "x".into();
        assert!(matches!(score_sheet(&other, &k, &rule, &none), Err(ScoreError::UnknownTest { .. })));
        let bad = sheet(vec![Mark::Letter('E'), Mark::Blank, Mark::Blank, Mark::Blank]);
        assert!(matches!(score_sheet(&bad, &k, &rule, &none), Err(ScoreError::InvalidMark { position: 1, mark: 'E', .. })));
        assert!(ScoringRule::new(1, 1, 0, 0).is_err());
        assert!("e".parse::<Mark>().is_err());
    }

    #[test]
    fn statistics_and_rounding() {
        let k = key(3);
        let s = group_statistics(&[sheet(vec![Mark::Blank; 3])], std::slice::from_ref(&k)).unwrap();
        assert_eq!(s.len(), 3);
        assert!(s.iter().all(|g| (g.n_right, g.n_blank, g.n_wrong) == (0, 1, 0)));
        assert_eq!(round2(Ratio::new(1, 8)), "0.13");
        assert_eq!(round2(Ratio::new(16, 25)), "0.64");
        assert_eq!(round2(Ratio::from_integer(1)), "1.00");
        assert_eq!(round2(Ratio::new(1, 200)), "0.01");
    }

    #[test]
    fn cohort_identities() {
        let rep = |id: usize, passed: bool| ScoreReport {
            student_id: format!("s{id}"),
            test_id: "t".into(),
            n_right: 0,
            n_wrong: 0,
            n_blank: 0,
            score: 0,
            passed,
            per_question: vec![],
        };
        let first: Vec<_> = (0..540).map(|i| rep(i, i % 2 == 0)).collect();
        let second: Vec<_> = (317..838).map(|i| rep(i, i % 3 == 0)).collect();
        let c = cohort_statistics(&first, &second).unwrap();
        assert_eq!((c.both, c.only_first, c.only_second, c.distinct), (223, 317, 298, 838));
        assert_eq!(c.pass_pass + c.pass_fail + c.fail_pass + c.fail_fail, c.both);
        let disjoint = cohort_statistics(&first[..10], &second[300..]).unwrap();
        assert_eq!(disjoint.both, 0);
        let dup = vec![rep(1, true), rep(1, false)];
        assert!(matches!(cohort_statistics(&dup, &[]), Err(ScoreError::DuplicateStudent(_))));
    }

    #[test]
    fn guessing() {
        let g = random_guess_simulation(&ScoringRule::default(), 20, 4, 20_000, 1);
        assert_eq!(g.closed_form_mean, 0.0);
        assert!((g.closed_form_sd - 60f64.sqrt()).abs() < 1e-12);
        assert!(g.mean.abs() < 0.2 && (g.sd - 60f64.sqrt()).abs() < 0.3, "{g:?}");
        let zero = ScoringRule { points_right: 0, points_wrong: 0, points_blank: 0, pass_threshold: 0 };
        let z = random_guess_simulation(&zero, 1, 4, 100, 1);
        assert_eq!((z.mean, z.sd, z.closed_form_mean), (0.0, 0.0, 0.0));
    }

    #[test]
    fn glyphs() {
        let f = |a, b, c| [Ratio::new(a, 100), Ratio::new(b, 100), Ratio::new(c, 100)];
        assert_eq!(glyph_counts(f(64, 16, 20), 50), [32, 8, 10]);
        assert_eq!(glyph_counts(f(33, 33, 34), 10), [3, 3, 4]);
        assert_eq!(glyph_counts([Ratio::from_integer(1), Ratio::from_integer(0), Ratio::from_integer(0)], 40), [40, 0, 0]);
        let one = GroupStats { group: "all".into(), n_right: 5, n_blank: 0, n_wrong: 0 };
        let chart = render_bar_chart(std::slice::from_ref(&one), 10);
        assert_eq!(chart.lines().next().unwrap(), "all |##########| 1.00 0.00 0.00");
        assert!(render_bar_chart_svg(&[one]).contains("height=\"200.00\""));
    }

    #[test]
    fn file_round_trips() {
        let k = key(5);
        let mut k2 = key(2);
        k2.test_id = "t-2".into();
        let keys = vec![k.clone(), k2];
        assert_eq!(parse_keys(&render_keys(&keys)).unwrap(), keys);
        assert_eq!(parse_keys(&render_keys(&[])).unwrap(), []);
        assert!(parse_keys("bad header\n").is_err());

        let sheets = vec![ResponseSheet::from_key("s1", &k), sheet(vec![Mark::Blank; 5])];
        let text = render_responses(&sheets);
        assert!(text.starts_with("student_id,test_id,a1,a2,a3,a4,a5\n"));
        assert_eq!(parse_responses(&text).unwrap(), sheets);

        let mut reports = score_sheets(&sheets, &keys, &ScoringRule::default(), &BTreeSet::new()).unwrap();
        for r in &mut reports {
            r.per_question.clear();
        }
        assert_eq!(parse_reports(&render_reports(&reports)).unwrap(), reports);
    }
}
