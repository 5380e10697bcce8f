//! Training-target preparation in the four target flavors.

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use super::lid::LidFormat;
use super::manifest::{Manifest, Utterance};
use crate::cls::{ClsConverter, TextOptions};

/// Which text a training target carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TargetFlavor {
    Native,
    NativeLid,
    Cls,
    ClsLid,
}

impl TargetFlavor {
    pub const ALL: [TargetFlavor; 4] = [
        TargetFlavor::Native,
        TargetFlavor::NativeLid,
        TargetFlavor::Cls,
        TargetFlavor::ClsLid,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TargetFlavor::Native => "native",
            TargetFlavor::NativeLid => "native-lid",
            TargetFlavor::Cls => "cls",
            TargetFlavor::ClsLid => "cls-lid",
        }
    }

    pub fn has_lid(self) -> bool {
        matches!(self, TargetFlavor::NativeLid | TargetFlavor::ClsLid)
    }
}

impl fmt::Display for TargetFlavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TargetFlavor {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TargetFlavor::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown target flavor `{s}` (expected native, native-lid, cls or cls-lid)"))
    }
}

/// Processing step a report record comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Stage {
    Validate,
    Convert,
    Lid,
}

impl Stage {
    pub fn name(self) -> &'static str {
        match self {
            Stage::Validate => "validate",
            Stage::Convert => "convert",
            Stage::Lid => "lid",
        }
    }
}

/// One line of the error or warning report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportRecord {
    pub id: String,
    pub stage: Stage,
    pub message: String,
}

impl fmt::Display for ReportRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // keep the record on one line
        let msg = self.message.replace(['\t', '\n'], " ");
        write!(f, "{}\t{}\t{}", self.id, self.stage.name(), msg)
    }
}

#[derive(Debug, Clone)]
pub struct PrepOptions {
    pub flavor: TargetFlavor,
    /// CLS conversion settings; `text.strict` makes any bad word fail the
    /// whole utterance, otherwise bad words are dropped with a warning.
    pub text: TextOptions,
    pub lid: LidFormat,
}

impl PrepOptions {
    pub fn new(flavor: TargetFlavor) -> Self {
        PrepOptions {
            flavor,
            text: TextOptions {
                strict: true,
                ..TextOptions::default()
            },
            lid: LidFormat::default(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PrepOutput {
    /// `(id, target)` in manifest order.
    pub targets: Vec<(String, String)>,
    /// Utterances that produced no target.
    pub errors: Vec<ReportRecord>,
    /// Non-fatal notes: empty transcripts, dropped words.
    pub warnings: Vec<ReportRecord>,
}

impl PrepOutput {
    pub fn write_targets<W: Write>(&self, mut out: W) -> io::Result<()> {
        for (id, t) in &self.targets {
            writeln!(out, "{id}\t{t}")?;
        }
        Ok(())
    }

    pub fn write_errors<W: Write>(&self, mut out: W) -> io::Result<()> {
        for r in &self.errors {
            writeln!(out, "{r}")?;
        }
        Ok(())
    }

    pub fn write_warnings<W: Write>(&self, mut out: W) -> io::Result<()> {
        for r in &self.warnings {
            writeln!(out, "{r}")?;
        }
        Ok(())
    }
}

fn target_for(
    u: &Utterance,
    conv: &ClsConverter,
    opts: &PrepOptions,
    warnings: &mut Vec<ReportRecord>,
) -> Result<String, ReportRecord> {
    let fail = |stage, message: String| ReportRecord {
        id: u.id.clone(),
        stage,
        message,
    };
    if let Some(p) = u.validate().into_iter().next() {
        return Err(fail(Stage::Validate, p.to_string()));
    }
    if u.transcript.trim().is_empty() {
        warnings.push(fail(Stage::Validate, "empty transcript".into()));
    }
    let body = match opts.flavor {
        TargetFlavor::Native | TargetFlavor::NativeLid => u.transcript.clone(),
        TargetFlavor::Cls | TargetFlavor::ClsLid => {
            let conv = conv
                .text_to_cls(&u.transcript, u.lang, &opts.text)
                .map_err(|e| fail(Stage::Convert, e.to_string()))?;
            for e in conv.errors {
                warnings.push(fail(Stage::Convert, format!("dropped {e}")));
            }
            conv.text
        }
    };
    if opts.flavor.has_lid() {
        opts.lid.inject(u.lang, &body).map_err(|e| fail(Stage::Lid, e.to_string()))
    } else {
        Ok(body)
    }
}

/// Build one target per utterance. Every utterance ends up either in
/// `targets` or in `errors`, never both.
pub fn prep_corpus(manifest: &Manifest, conv: &ClsConverter, opts: &PrepOptions) -> PrepOutput {
    let mut out = PrepOutput::default();
    for u in &manifest.utterances {
        match target_for(u, conv, opts, &mut out.warnings) {
            Ok(t) => out.targets.push((u.id.clone(), t)),
            Err(r) => out.errors.push(r),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(manifest: &str, flavor: TargetFlavor) -> PrepOutput {
        let m = Manifest::parse_str(manifest).unwrap();
        prep_corpus(&m, ClsConverter::bundled(), &PrepOptions::new(flavor))
    }

    const M: &str = "u1\thindi\t1\ta.wav\tआ\nu2\tgujarati\t1\tb.wav\t\nu3\thindi\t1\tc.wav\tক\nu4\thindi\t1\td.wav\tआ ्क\n";

    #[test]
    fn flavors() {
        let native = run(M, TargetFlavor::Native);
        assert_eq!(native.targets[0], ("u1".into(), "आ".into()));
        assert_eq!(native.targets[2], ("u4".into(), "आ ्क".into()));
        let cls_lid = run(M, TargetFlavor::ClsLid);
        assert_eq!(cls_lid.targets[0].1, "<hindi aa");
        assert_eq!(cls_lid.targets[1].1, "<gujarati");
        let native_lid = run(M, TargetFlavor::NativeLid);
        assert_eq!(native_lid.targets[0].1, "<hindi आ");
        let cls = run(M, TargetFlavor::Cls);
        assert_eq!(cls.targets[0].1, "aa");
        assert_eq!(cls.targets[1].1, "");
    }

    #[test]
    fn conservation_and_reports() {
        for f in TargetFlavor::ALL {
            let out = run(M, f);
            assert_eq!(out.targets.len() + out.errors.len(), 4, "{f}");
            assert!(out.errors.iter().any(|r| r.id == "u3" && r.stage == Stage::Validate));
            assert!(out.warnings.iter().any(|r| r.id == "u2"));
        }
        let cls = run(M, TargetFlavor::Cls);
        assert!(cls.errors.iter().any(|r| r.id == "u4" && r.stage == Stage::Convert));
    }

    #[test]
    fn lenient_drops_bad_words() {
        let m = Manifest::parse_str(M).unwrap();
        let mut opts = PrepOptions::new(TargetFlavor::Cls);
        opts.text.strict = false;
        let out = prep_corpus(&m, ClsConverter::bundled(), &opts);
        assert_eq!(out.targets.last().unwrap(), &("u4".to_string(), "aa".to_string()));
        assert!(out.warnings.iter().any(|r| r.id == "u4"));
    }

    #[test]
    fn empty_manifest() {
        let out = run("", TargetFlavor::ClsLid);
        assert_eq!(out, PrepOutput::default());
    }

    #[test]
    fn report_format() {
        let r = ReportRecord {
            id: "u1".into(),
            stage: Stage::Convert,
            message: "bad\tword".into(),
        };
        assert_eq!(r.to_string(), "u1\tconvert\tbad word");
    }
}
