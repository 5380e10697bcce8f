//! `indic-cls` command-line tool.
//!
//! Exit codes: 0 success (warnings are counted on stderr), 1 usage error,
//! 2 data error, 3 internal error.

use std::fmt;
use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use indic_cls::cls::TextOptions;
use indic_cls::corpus::{corpus_stats, prep_corpus, render_stats_table, LidFormat, Manifest, PrepOptions, TargetFlavor};
use indic_cls::eval::{
    read_id_text, read_lang_map, render_report, score_corpus, EvalReport, MissingPolicy, ReportFormat, ScoreOptions,
};
use indic_cls::ns::{Lexicon, NsMode, NsOptions, Reconstructor};
use indic_cls::script::{self, detect_script};
use indic_cls::{ClsConverter, ConvertOptions, LanguageId, ScriptId};

#[derive(Debug, Parser)]
#[command(name = "indic-cls", version, about = "Common-label-set tools for Indic ASR text")]
struct Cli {
    /// Language of the input (hindi, marathi, gujarati, bengali, odia).
    #[arg(long, global = true)]
    lang: Option<LanguageId>,

    /// Abort on the first bad word or line (default).
    #[arg(long, global = true, overrides_with = "lenient")]
    strict: bool,

    /// Skip bad words or lines with a warning instead of aborting.
    #[arg(long, global = true, overrides_with = "strict")]
    lenient: bool,

    /// Surface form of language tags; `{lang}` is replaced by the language name.
    #[arg(long, global = true, default_value = "<{lang}")]
    lid_format: String,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the detected script of each input line.
    Detect {
        input: Option<PathBuf>,
        /// Also print per-script code point counts.
        #[arg(long)]
        counts: bool,
    },
    /// Convert native-script text to CLS, one line at a time.
    ToCls {
        input: Option<PathBuf>,
        #[command(flatten)]
        convert: ConvertArgs,
    },
    /// Reconstruct native-script text from CLS, one line at a time.
    ToNs {
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Mode::Mono)]
        mode: Mode,
        /// Lexicon TSV, as `LANG=PATH` or `PATH` for the `--lang` language.
        #[arg(long = "lexicon", value_name = "[LANG=]PATH")]
        lexicons: Vec<String>,
        /// Correct unknown words to a lexicon entry one label away.
        #[arg(long)]
        fuzzy: bool,
        /// Append the per-word flags after a tab.
        #[arg(long)]
        flags: bool,
        #[command(flatten)]
        convert: ConvertArgs,
    },
    /// Move text between blocks by code point offset.
    Translit {
        input: Option<PathBuf>,
        #[arg(long)]
        from: ScriptId,
        #[arg(long)]
        to: ScriptId,
    },
    /// Build training targets from a manifest.
    Prep {
        manifest: PathBuf,
        #[arg(long)]
        flavor: TargetFlavor,
        /// Where to write per-utterance errors (default: stderr).
        #[arg(long)]
        errors: Option<PathBuf>,
        #[command(flatten)]
        convert: ConvertArgs,
    },
    /// Lexicon tools.
    Lexicon {
        #[command(subcommand)]
        command: LexiconCommand,
    },
    /// Score hypotheses against references and print a report.
    Score {
        reference: PathBuf,
        hypothesis: PathBuf,
        /// `id<TAB>language` map for per-language columns.
        #[arg(long)]
        langs: Option<PathBuf>,
        /// NFC-normalize and drop punctuation before scoring.
        #[arg(long)]
        normalize: bool,
        #[arg(long, value_enum, default_value_t = Missing::Delete)]
        missing: Missing,
        /// Row label in the report.
        #[arg(long, default_value = "system")]
        system: String,
        /// Add CER columns.
        #[arg(long)]
        cer: bool,
        /// Also write the report as TSV.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Hours and utterance counts per language for one or more manifests.
    Stats {
        #[arg(required = true)]
        manifests: Vec<PathBuf>,
    },
    /// Render a TSV report as a text table or normalized TSV.
    Report {
        input: Option<PathBuf>,
        #[arg(long, default_value = "text")]
        format: ReportFormat,
    },
}

#[derive(Debug, Subcommand)]
enum LexiconCommand {
    /// Count the words of a native-script corpus under their CLS keys.
    Build {
        input: Option<PathBuf>,
        #[arg(long, short)]
        out: Option<PathBuf>,
        #[command(flatten)]
        convert: ConvertArgs,
    },
}

#[derive(Debug, Clone, Copy, Args)]
struct ConvertArgs {
    /// Keep every inherent vowel.
    #[arg(long)]
    no_schwa: bool,
    /// Keep doubled consonants as two labels.
    #[arg(long)]
    no_geminate: bool,
}

impl ConvertArgs {
    fn options(self) -> ConvertOptions {
        ConvertOptions {
            schwa: !self.no_schwa,
            geminate: !self.no_geminate,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    Mono,
    Unified,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Missing {
    Delete,
    Error,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Data(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Data(_) => 2,
            Failure::Internal(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Data(m) | Failure::Internal(m) => f.write_str(m),
        }
    }
}

fn data(e: impl fmt::Display) -> Failure {
    Failure::Data(e.to_string())
}

/// Failures writing our own output.
fn internal(e: io::Error) -> Failure {
    Failure::Internal(format!("write failed: {e}"))
}

struct Ctx {
    lang: Option<LanguageId>,
    strict: bool,
    lid: LidFormat,
    warnings: usize,
}

impl Ctx {
    fn lang(&self, what: &str) -> Result<LanguageId, Failure> {
        self.lang.ok_or_else(|| Failure::Usage(format!("{what} needs --lang")))
    }

    fn warn(&mut self, msg: impl fmt::Display) {
        self.warnings += 1;
        eprintln!("warning: {msg}");
    }
}

fn open(path: Option<&Path>) -> Result<Box<dyn BufRead>, Failure> {
    match path {
        None => Ok(Box::new(BufReader::new(io::stdin().lock()))),
        Some(p) if p == Path::new("-") => Ok(Box::new(BufReader::new(io::stdin().lock()))),
        Some(p) => File::open(p)
            .map(|f| Box::new(BufReader::new(f)) as Box<dyn BufRead>)
            .map_err(|e| data(format!("{}: {e}", p.display()))),
    }
}

fn read_all(path: Option<&Path>) -> Result<String, Failure> {
    let mut bytes = Vec::new();
    open(path)?.read_to_end(&mut bytes).map_err(data)?;
    let name = path.map_or("<stdin>".into(), |p| p.display().to_string());
    String::from_utf8(bytes).map_err(|e| data(format!("{name}: invalid UTF-8 at byte {}", e.utf8_error().valid_up_to())))
}

fn create(path: &Path) -> Result<BufWriter<File>, Failure> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| data(format!("{}: {e}", path.display())))
}

/// Apply `f` to every NFC-normalized input line, writing one output line each.
fn each_line(
    ctx: &mut Ctx,
    input: Option<&Path>,
    mut f: impl FnMut(&mut Ctx, &str) -> Result<String, String>,
) -> Result<(), Failure> {
    let mut reader = open(input)?;
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let mut buf = Vec::new();
    let mut lineno = 0;
    loop {
        buf.clear();
        if reader.read_until(b'\n', &mut buf).map_err(data)? == 0 {
            break;
        }
        lineno += 1;
        let raw = buf.strip_suffix(b"\n").unwrap_or(&buf);
        let raw = raw.strip_suffix(b"\r").unwrap_or(raw);
        let line = script::normalize_bytes(raw).map_err(|e| data(format!("line {lineno}: {e}")))?;
        let result = match f(ctx, &line) {
            Ok(s) => s,
            Err(e) if ctx.strict => return Err(data(format!("line {lineno}: {e}"))),
            Err(e) => {
                ctx.warn(format!("line {lineno}: {e}"));
                String::new()
            }
        };
        writeln!(out, "{result}").map_err(internal)?;
    }
    out.flush().map_err(internal)
}

fn detect(ctx: &mut Ctx, input: Option<&Path>, counts: bool) -> Result<(), Failure> {
    each_line(ctx, input, |_, line| {
        let d = detect_script(line);
        if !counts {
            return Ok(d.script.to_string());
        }
        let c: Vec<String> = d.per_script_counts.iter().map(|(s, n)| format!("{s}={n}")).collect();
        Ok(format!("{}\t{}", d.script, c.join(" ")))
    })
}

fn to_cls(ctx: &mut Ctx, input: Option<&Path>, convert: ConvertArgs) -> Result<(), Failure> {
    let lang = ctx.lang("to-cls")?;
    let conv = ClsConverter::bundled();
    let opts = TextOptions {
        convert: convert.options(),
        strict: ctx.strict,
        ..TextOptions::default()
    };
    each_line(ctx, input, |ctx, line| {
        let r = conv.text_to_cls(line, lang, &opts).map_err(|e| e.to_string())?;
        for e in r.errors {
            ctx.warn(format!("dropped {e}"));
        }
        Ok(r.text)
    })
}

fn load_lexicon(ctx: &Ctx, spec: &str, opts: ConvertOptions) -> Result<Lexicon, Failure> {
    let (lang, path) = match spec.split_once('=') {
        Some((l, p)) => (l.parse::<LanguageId>().map_err(|e| Failure::Usage(e.to_string()))?, p),
        None => (ctx.lang("--lexicon without LANG=")?, spec),
    };
    let path = Path::new(path);
    Lexicon::read_tsv(open(Some(path))?, lang, opts, Some(ClsConverter::bundled()))
        .map_err(|e| data(format!("{}: {e}", path.display())))
}

fn to_ns(
    ctx: &mut Ctx,
    input: Option<&Path>,
    mode: Mode,
    lexicons: &[String],
    fuzzy: bool,
    show_flags: bool,
    convert: ConvertArgs,
) -> Result<(), Failure> {
    let mode = match mode {
        Mode::Mono => NsMode::Mono(ctx.lang("to-ns --mode mono")?),
        Mode::Unified => NsMode::Unified,
    };
    let opts = NsOptions {
        convert: convert.options(),
        fuzzy,
        lid: ctx.lid.clone(),
        ..NsOptions::default()
    };
    let mut r = Reconstructor::new(ClsConverter::bundled(), opts.clone());
    for spec in lexicons {
        r = r.with_lexicon(load_lexicon(ctx, spec, opts.convert)?);
    }
    each_line(ctx, input, |_, line| {
        let res = r.cls_text_to_ns(line, mode).map_err(|e| e.to_string())?;
        if show_flags {
            let f: Vec<&str> = res.flags.iter().map(|f| f.as_str()).collect();
            Ok(format!("{}\t{}", res.text, f.join(" ")))
        } else {
            Ok(res.text)
        }
    })
}

fn translit(ctx: &mut Ctx, input: Option<&Path>, from: ScriptId, to: ScriptId) -> Result<(), Failure> {
    each_line(ctx, input, |_, line| {
        script::transliterate_offset(line, from, to).map_err(|e| e.to_string())
    })
}

fn prep(
    ctx: &mut Ctx,
    manifest: &Path,
    flavor: TargetFlavor,
    errors: Option<&Path>,
    convert: ConvertArgs,
) -> Result<(), Failure> {
    let text = read_all(Some(manifest))?;
    let m = Manifest::parse_str(&text).map_err(|e| data(format!("{}: {e}", manifest.display())))?;
    let mut opts = PrepOptions::new(flavor);
    opts.text.strict = ctx.strict;
    opts.text.convert = convert.options();
    opts.lid = ctx.lid.clone();
    let out = prep_corpus(&m, ClsConverter::bundled(), &opts);
    let stdout = io::stdout();
    let mut w = BufWriter::new(stdout.lock());
    out.write_targets(&mut w).and_then(|_| w.flush()).map_err(internal)?;
    match errors {
        Some(p) => {
            let mut f = create(p)?;
            out.write_errors(&mut f).and_then(|_| f.flush()).map_err(internal)?;
        }
        None => out.write_errors(io::stderr().lock()).map_err(internal)?,
    }
    for r in &out.warnings {
        ctx.warn(r);
    }
    eprintln!(
        "prep: {} targets, {} errors out of {} utterances",
        out.targets.len(),
        out.errors.len(),
        m.len()
    );
    Ok(())
}

fn lexicon_build(ctx: &mut Ctx, input: Option<&Path>, out: Option<&Path>, convert: ConvertArgs) -> Result<(), Failure> {
    let lang = ctx.lang("lexicon build")?;
    let (lex, stats) = Lexicon::build(open(input)?, lang, ClsConverter::bundled(), convert.options()).map_err(data)?;
    match out {
        Some(p) => {
            let mut f = create(p)?;
            lex.write_tsv(&mut f).and_then(|_| f.flush()).map_err(internal)?;
        }
        None => {
            let mut w = BufWriter::new(io::stdout().lock());
            lex.write_tsv(&mut w).and_then(|_| w.flush()).map_err(internal)?;
        }
    }
    if stats.malformed > 0 {
        ctx.warn(format!("{} malformed words skipped", stats.malformed));
    }
    eprintln!(
        "lexicon: {} keys from {} words ({} colliding keys, {} non-words)",
        lex.len(),
        stats.added,
        lex.collisions().count(),
        stats.non_words
    );
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn score(
    ctx: &mut Ctx,
    reference: &Path,
    hypothesis: &Path,
    langs: Option<&Path>,
    normalize: bool,
    missing: Missing,
    system: &str,
    with_cer: bool,
    out: Option<&Path>,
) -> Result<(), Failure> {
    let refs = read_id_text(open(Some(reference))?, "reference").map_err(data)?;
    let hyps = read_id_text(open(Some(hypothesis))?, "hypothesis").map_err(data)?;
    let lang_map = match (langs, ctx.lang) {
        (Some(p), _) => read_lang_map(open(Some(p))?).map_err(data)?,
        (None, Some(l)) => refs.iter().map(|(id, _)| (id.clone(), l)).collect(),
        (None, None) => Default::default(),
    };
    let opts = ScoreOptions {
        normalize,
        missing: match missing {
            Missing::Delete => MissingPolicy::Delete,
            Missing::Error => MissingPolicy::Error,
        },
    };
    let hyp_ids: std::collections::HashSet<&str> = hyps.iter().map(|(id, _)| id.as_str()).collect();
    let absent = refs.iter().filter(|(id, _)| !hyp_ids.contains(id.as_str())).count();
    let s = score_corpus(&refs, &hyps, &lang_map, opts).map_err(data)?;
    if absent > 0 && opts.missing == MissingPolicy::Delete {
        ctx.warn(format!("{absent} references have no hypothesis and were scored as deletions"));
    }
    let languages: Vec<LanguageId> = LanguageId::ALL.into_iter().filter(|l| s.per_lang.contains_key(l)).collect();
    let mut report = EvalReport::new(languages);
    report.push_score(system, &s, with_cer);
    let stdout = io::stdout();
    let mut w = BufWriter::new(stdout.lock());
    if !report.languages.is_empty() {
        w.write_all(render_report(&report, ReportFormat::Text).as_bytes()).map_err(internal)?;
    }
    let rate = |c: indic_cls::eval::ErrorCounts| {
        indic_cls::eval::Percent::of_counts(&c).map_or("-".to_string(), |p| p.display())
    };
    let o = s.overall;
    writeln!(
        w,
        "overall: WER {} ({}/{} words, S={} D={} I={}), CER {} ({}/{} chars), {} utterances",
        rate(o.wer),
        o.wer.errors(),
        o.wer.ref_len(),
        o.wer.substitutions,
        o.wer.deletions,
        o.wer.insertions,
        rate(o.cer),
        o.cer.errors(),
        o.cer.ref_len(),
        o.utterances
    )
    .and_then(|_| w.flush())
    .map_err(internal)?;
    if let Some(p) = out {
        let mut f = create(p)?;
        f.write_all(render_report(&report, ReportFormat::Tsv).as_bytes())
            .and_then(|_| f.flush())
            .map_err(internal)?;
    }
    Ok(())
}

fn stats(ctx: &mut Ctx, manifests: &[PathBuf]) -> Result<(), Failure> {
    let mut splits = Vec::new();
    for p in manifests {
        let text = read_all(Some(p))?;
        let m = Manifest::parse_str(&text).map_err(|e| data(format!("{}: {e}", p.display())))?;
        let s = corpus_stats(&m);
        for (id, line) in &s.rejected {
            ctx.warn(format!("{}:{line}: `{id}` left out of the totals", p.display()));
        }
        let name = p.file_stem().map_or_else(|| p.display().to_string(), |s| s.to_string_lossy().into_owned());
        splits.push((name, s));
    }
    print!("{}", render_stats_table(&splits));
    Ok(())
}

fn report(input: Option<&Path>, format: ReportFormat) -> Result<(), Failure> {
    let text = read_all(input)?;
    let r = EvalReport::parse_tsv(&text).map_err(data)?;
    print!("{}", render_report(&r, format));
    Ok(())
}

fn run(cli: Cli) -> Result<usize, Failure> {
    let lid = LidFormat::new(&cli.lid_format).map_err(|e| Failure::Usage(format!("--lid-format: {e}")))?;
    let mut ctx = Ctx {
        lang: cli.lang,
        strict: !cli.lenient,
        lid,
        warnings: 0,
    };
    let c = &mut ctx;
    match &cli.command {
        Command::Detect { input, counts } => detect(c, input.as_deref(), *counts),
        Command::ToCls { input, convert } => to_cls(c, input.as_deref(), *convert),
        Command::ToNs {
            input,
            mode,
            lexicons,
            fuzzy,
            flags,
            convert,
        } => to_ns(c, input.as_deref(), *mode, lexicons, *fuzzy, *flags, *convert),
        Command::Translit { input, from, to } => translit(c, input.as_deref(), *from, *to),
        Command::Prep {
            manifest,
            flavor,
            errors,
            convert,
        } => prep(c, manifest, *flavor, errors.as_deref(), *convert),
        Command::Lexicon {
            command: LexiconCommand::Build { input, out, convert },
        } => lexicon_build(c, input.as_deref(), out.as_deref(), *convert),
        Command::Score {
            reference,
            hypothesis,
            langs,
            normalize,
            missing,
            system,
            cer,
            out,
        } => score(
            c,
            reference,
            hypothesis,
            langs.as_deref(),
            *normalize,
            *missing,
            system,
            *cer,
            out.as_deref(),
        ),
        Command::Stats { manifests } => stats(c, manifests),
        Command::Report { input, format } => report(input.as_deref(), *format),
    }?;
    Ok(ctx.warnings)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match std::panic::catch_unwind(|| run(cli)) {
        Ok(Ok(warnings)) => {
            if warnings > 0 {
                eprintln!("indic-cls: {warnings} warning(s)");
            }
            ExitCode::SUCCESS
        }
        Ok(Err(f)) => {
            eprintln!("indic-cls: {f}");
            ExitCode::from(f.code())
        }
        Err(_) => ExitCode::from(3),
    }
}
