//! Command-line front end: load semigroups from files, run analyses, and
//! emit deterministic text or JSON reports.
//!
//! Exit codes: 0 success, 1 domain error (not associative, not a chain,
//! missing equality member, ...), 2 usage or parse error, 3 cap exceeded.

mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use finsemi::io::{render_congruence, render_element_set, render_map};
use finsemi::{
    all_congruences, aut_group, characteristic_witness, enumerate_end,
    extension_census, fully_invariant_witness, hopfian_report, left_zero_tower,
    meet_of_index_at_most, shift_between_levels, verify_end_limit, Congruence, EndoMonoid, Error,
    FiniteSemigroup, InvarianceWitness, Limits,
};
use report::Report;

#[derive(Debug, Parser)]
#[command(name = "finsemi", version)]
#[command(about = "Workbench for finite semigroups: congruences, endomorphisms, quotient towers")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Cap on the size of enumerated endomorphism monoids.
    #[arg(long, global = true)]
    cap_end: Option<usize>,

    /// Cap on the size of enumerated congruence families.
    #[arg(long, global = true)]
    cap_congruences: Option<usize>,

    /// Bound on the order of any constructed semigroup.
    #[arg(long, global = true)]
    max_order: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate a semigroup file and report basic facts
    Validate { path: PathBuf },

    /// Analyze congruences, endomorphisms and predicates; with no section
    /// flags, everything is reported
    Analyze {
        path: PathBuf,

        /// List the congruence lattice.
        #[arg(long)]
        congruences: bool,

        /// List the endomorphism monoid.
        #[arg(long)]
        end: bool,

        /// List the automorphism group.
        #[arg(long)]
        aut: bool,

        /// Report the fully-invariant verdict per congruence.
        #[arg(long)]
        fully_invariant: bool,

        /// Report the characteristic verdict per congruence.
        #[arg(long)]
        characteristic: bool,

        /// Report the surjective-endomorphism structure.
        #[arg(long)]
        hopfian: bool,

        /// Also report the meet of all congruences of index at most N.
        #[arg(long, value_name = "N")]
        index_bound: Option<usize>,

        /// Restrict per-congruence verdicts to one congruence literal,
        /// e.g. "{0 2}{1 3}".
        #[arg(long, value_name = "BLOCKS")]
        congruence: Option<String>,
    },

    /// Meet of all congruences of index at most the bound
    Rho {
        path: PathBuf,

        #[arg(long, value_name = "N")]
        index_bound: usize,
    },

    /// Compare End S with the limit of its quotient monoids along a chain
    /// of fully invariant congruences given as semicolon-separated literals
    Theorem9 {
        path: PathBuf,

        /// Chain of congruence literals, e.g. "{0 1 2 3};{0 2}{1 3};{0}{1}{2}{3}".
        #[arg(long, value_name = "CHAIN")]
        family: String,
    },

    /// Build a diagnostic tower of the named kind
    Tower {
        /// Tower kind.
        #[arg(value_parser = ["left-zero"])]
        kind: String,

        /// Number of levels.
        #[arg(long)]
        levels: usize,
    },

    /// List the endomorphism monoid
    End { path: PathBuf },

    /// List the automorphism group
    Aut { path: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let limits = Limits {
        max_order: cli.max_order.unwrap_or(Limits::default().max_order),
        congruence_cap: cli
            .cap_congruences
            .unwrap_or(Limits::default().congruence_cap),
        end_cap: cli.cap_end.unwrap_or(Limits::default().end_cap),
        oracle_bound: Limits::default().oracle_bound,
    };
    match run(&cli.command, &limits) {
        Ok(report) => {
            match cli.format {
                Format::Text => print!("{}", report.render_text()),
                Format::Json => print!("{}", report.render_json()),
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err}");
            if err.is_parse() {
                ExitCode::from(2)
            } else if err.is_cap_exceeded() {
                ExitCode::from(3)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn run(command: &Command, limits: &Limits) -> Result<Report, Error> {
    match command {
        Command::Validate { path } => cmd_validate(path),
        Command::Analyze {
            path,
            congruences,
            end,
            aut,
            fully_invariant,
            characteristic,
            hopfian,
            index_bound,
            congruence,
        } => cmd_analyze(
            path,
            Sections {
                congruences: *congruences,
                end: *end,
                aut: *aut,
                fully_invariant: *fully_invariant,
                characteristic: *characteristic,
                hopfian: *hopfian,
                index_bound: *index_bound,
                congruence: congruence.clone(),
            },
            limits,
        ),
        Command::Rho { path, index_bound } => cmd_rho(path, *index_bound, limits),
        Command::Theorem9 { path, family } => cmd_theorem9(path, family, limits),
        Command::Tower { kind, levels } => cmd_tower(kind, *levels, limits),
        Command::End { path } => cmd_end(path, limits),
        Command::Aut { path } => cmd_aut(path, limits),
    }
}

fn load_semigroup(path: &Path) -> Result<Arc<FiniteSemigroup>, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
        line: 0,
        message: format!("cannot read {}: {e}", path.display()),
    })?;
    Ok(Arc::new(finsemi::io::parse_semigroup(&text)?))
}

fn describe_witness(w: &InvarianceWitness) -> String {
    format!(
        "f={} pair=({} {})",
        render_map(&w.endo),
        w.pair.0,
        w.pair.1
    )
}

fn cmd_validate(path: &Path) -> Result<Report, Error> {
    let s = load_semigroup(path)?;
    let mut report = Report::new("validate");
    report.push("input", path.display().to_string());
    report.push("order", s.order());
    report.push("associative", true);
    report.push("idempotents", s.idempotent_count());
    report.push(
        "minimal-generating-set",
        render_element_set(s.minimal_generating_set()),
    );
    Ok(report)
}

struct Sections {
    congruences: bool,
    end: bool,
    aut: bool,
    fully_invariant: bool,
    characteristic: bool,
    hopfian: bool,
    index_bound: Option<usize>,
    congruence: Option<String>,
}

impl Sections {
    fn all(&self) -> bool {
        !(self.congruences
            || self.end
            || self.aut
            || self.fully_invariant
            || self.characteristic
            || self.hopfian
            || self.index_bound.is_some()
            || self.congruence.is_some())
    }
}

fn get_ends<'a>(
    cache: &'a mut Option<EndoMonoid>,
    s: &Arc<FiniteSemigroup>,
    limits: &Limits,
) -> Result<&'a EndoMonoid, Error> {
    if cache.is_none() {
        *cache = Some(enumerate_end(s, limits)?);
    }
    Ok(cache.as_ref().expect("just filled"))
}

fn cmd_analyze(path: &Path, sections: Sections, limits: &Limits) -> Result<Report, Error> {
    let s = load_semigroup(path)?;
    let all = sections.all();
    let want_verdicts = all || sections.fully_invariant || sections.characteristic;
    let mut report = Report::new("analyze");
    report.push("input", path.display().to_string());
    report.push("order", s.order());
    report.push("idempotents", s.idempotent_count());
    report.push(
        "minimal-generating-set",
        render_element_set(s.minimal_generating_set()),
    );
    let mut ends = None;

    if let Some(literal) = &sections.congruence {
        let c = finsemi::io::parse_congruence(&s, literal)?;
        report.push("congruence", render_congruence(&c));
        report.push("congruence-index", c.index());
        let ends = get_ends(&mut ends, &s, limits)?;
        push_verdicts(&mut report, "congruence", &c, ends, true, true);
    } else if all || sections.congruences || want_verdicts {
        let family = all_congruences(&s, limits)?;
        report.push("congruence-count", family.len());
        let mut fully_invariant_count = 0usize;
        for (i, c) in family.iter().enumerate() {
            let key = format!("congruence-{}", i + 1);
            report.push(key.clone(), render_congruence(c));
            report.push(format!("{key}-index"), c.index());
            if want_verdicts {
                let ends = get_ends(&mut ends, &s, limits)?;
                let fi = push_verdicts(
                    &mut report,
                    &key,
                    c,
                    ends,
                    all || sections.fully_invariant,
                    all || sections.characteristic,
                );
                fully_invariant_count += usize::from(fi);
            }
        }
        if all || sections.fully_invariant {
            report.push("fully-invariant-count", fully_invariant_count);
        }
    }

    if all || sections.end {
        let ends = get_ends(&mut ends, &s, limits)?;
        report.push("end-count", ends.len());
        for (i, map) in ends.elements().iter().enumerate() {
            report.push(format!("endo-{}", i + 1), render_map(map));
        }
        let census = extension_census(&s, s.minimal_generating_set(), limits)?;
        report.push("census-extendable", census.extendable);
        report.push("census-total", census.total);
        report.push("census-free", census.all_extend());
    }

    if all || sections.aut {
        let ends = get_ends(&mut ends, &s, limits)?;
        let auts = aut_group(ends);
        report.push("aut-count", auts.len());
        for (i, &a) in auts.iter().enumerate() {
            report.push(format!("aut-{}", i + 1), render_map(ends.map(a)));
        }
    }

    if all || sections.hopfian {
        let ends = get_ends(&mut ends, &s, limits)?;
        let hopfian = hopfian_report(ends);
        report.push("surjective-count", hopfian.surjective.len());
        for (i, &e) in hopfian.surjective.iter().enumerate() {
            report.push(format!("surjective-{}", i + 1), render_map(ends.map(e)));
        }
        report.push("surjective-all-bijective", hopfian.all_surjective_bijective);
        report.push("surjective-equal-units", hopfian.surjective_equals_units);
        report.push("surjective-closed", hopfian.closed_under_composition);
        report.push(
            "surjective-sole-idempotent-identity",
            hopfian.identity_sole_idempotent,
        );
    }

    if let Some(bound) = sections.index_bound {
        push_rho(&mut report, &s, bound, &mut ends, limits)?;
    }
    Ok(report)
}

/// Appends fully-invariant/characteristic verdicts (as requested) and their
/// witnesses; returns the fully-invariant verdict.
fn push_verdicts(
    report: &mut Report,
    key: &str,
    c: &Congruence,
    ends: &EndoMonoid,
    fully_invariant: bool,
    characteristic: bool,
) -> bool {
    let mut fi = true;
    if fully_invariant {
        match fully_invariant_witness(c, ends) {
            None => report.push(format!("{key}-fully-invariant"), true),
            Some(w) => {
                fi = false;
                report.push(format!("{key}-fully-invariant"), false);
                report.witness(format!("{key} fully-invariant {}", describe_witness(&w)));
            }
        }
    }
    if characteristic {
        match characteristic_witness(c, ends) {
            None => report.push(format!("{key}-characteristic"), true),
            Some(w) => {
                report.push(format!("{key}-characteristic"), false);
                report.witness(format!("{key} characteristic {}", describe_witness(&w)));
            }
        }
    }
    fi
}

fn push_rho(
    report: &mut Report,
    s: &Arc<FiniteSemigroup>,
    bound: usize,
    ends: &mut Option<EndoMonoid>,
    limits: &Limits,
) -> Result<(), Error> {
    if bound == 0 {
        return Err(Error::Parse {
            line: 0,
            message: "index bound must be at least 1".into(),
        });
    }
    let rho = meet_of_index_at_most(s, bound, limits)?;
    let key = format!("rho-{bound}");
    report.push(key.clone(), render_congruence(&rho));
    report.push(format!("{key}-index"), rho.index());
    // Equality and the universal congruence are fully invariant on any
    // semigroup; only other meets need the endomorphism monoid.
    if rho.is_equality() || rho.is_universal() {
        report.push(format!("{key}-fully-invariant"), true);
    } else {
        let ends = get_ends(ends, s, limits)?;
        match fully_invariant_witness(&rho, ends) {
            None => report.push(format!("{key}-fully-invariant"), true),
            Some(w) => {
                report.push(format!("{key}-fully-invariant"), false);
                report.witness(format!("{key} fully-invariant {}", describe_witness(&w)));
            }
        }
    }
    Ok(())
}

fn cmd_rho(path: &Path, bound: usize, limits: &Limits) -> Result<Report, Error> {
    let s = load_semigroup(path)?;
    let mut report = Report::new("rho");
    report.push("input", path.display().to_string());
    report.push("order", s.order());
    report.push("index-bound", bound);
    let mut ends = None;
    push_rho(&mut report, &s, bound, &mut ends, limits)?;
    Ok(report)
}

fn cmd_theorem9(path: &Path, family: &str, limits: &Limits) -> Result<Report, Error> {
    let s = load_semigroup(path)?;
    let members: Vec<Congruence> = family
        .split(';')
        .map(|literal| finsemi::io::parse_congruence(&s, literal.trim()))
        .collect::<Result<_, _>>()?;
    let verdict = verify_end_limit(&s, &members, limits)?;
    let mut report = Report::new("theorem9");
    report.push("input", path.display().to_string());
    report.push("order", s.order());
    report.push("family-size", members.len());
    report.push("end-count", verdict.end_size);
    for (i, size) in verdict.level_sizes.iter().enumerate() {
        report.push(format!("end-quotient-{}-size", i + 1), *size);
    }
    report.push("thread-count", verdict.thread_count);
    report.push("separates-points", verdict.injective);
    report.push("covers-threads", verdict.surjective);
    report.push("respects-composition", verdict.homomorphism);
    report.push("isomorphism", verdict.isomorphism);
    if let Some((f, g)) = &verdict.injectivity_witness {
        report.witness(format!(
            "endomorphisms {} and {} agree on every quotient",
            render_map(f),
            render_map(g)
        ));
    }
    if let Some(t) = &verdict.surjectivity_witness {
        report.witness(format!(
            "thread {} is not the image of any endomorphism",
            render_map(t.components())
        ));
    }
    Ok(report)
}

fn cmd_tower(kind: &str, levels: usize, limits: &Limits) -> Result<Report, Error> {
    assert_eq!(kind, "left-zero", "clap restricts the kind");
    if levels == 0 {
        return Err(Error::Parse {
            line: 0,
            message: "a tower needs at least one level".into(),
        });
    }
    let tower = left_zero_tower(levels, limits)?;
    let mut report = Report::new("tower");
    report.push("kind", kind);
    report.push("levels", levels);
    for (i, level) in tower.system().levels().iter().enumerate() {
        report.push(format!("level-{}-order", i + 1), level.order());
        report.push(
            format!("level-{}-index-two-congruences", i + 1),
            tower.index_two_counts()[i],
        );
    }
    for i in 1..levels {
        let shift = shift_between_levels(&tower, i)?;
        report.push(format!("shift-{i}-map"), render_map(shift.map()));
        report.push(format!("shift-{i}-surjective"), shift.is_surjective());
        report.push(format!("shift-{i}-injective"), shift.is_injective());
    }
    Ok(report)
}

fn cmd_end(path: &Path, limits: &Limits) -> Result<Report, Error> {
    let s = load_semigroup(path)?;
    let ends = enumerate_end(&s, limits)?;
    let mut report = Report::new("end");
    report.push("input", path.display().to_string());
    report.push("order", s.order());
    report.push("end-count", ends.len());
    report.push("identity-index", ends.identity_index() + 1);
    report.push("unit-count", ends.unit_indices().len());
    for (i, map) in ends.elements().iter().enumerate() {
        report.push(format!("endo-{}", i + 1), render_map(map));
    }
    Ok(report)
}

fn cmd_aut(path: &Path, limits: &Limits) -> Result<Report, Error> {
    let s = load_semigroup(path)?;
    let ends = enumerate_end(&s, limits)?;
    let auts = aut_group(&ends);
    let mut report = Report::new("aut");
    report.push("input", path.display().to_string());
    report.push("order", s.order());
    report.push("aut-count", auts.len());
    for (i, &a) in auts.iter().enumerate() {
        report.push(format!("aut-{}", i + 1), render_map(ends.map(a)));
    }
    Ok(report)
}
