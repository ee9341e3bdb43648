use logalg_core::iso::{
    decide_center, decide_commutative, decide_direct_sum, AlgebraDescriptor, IsoVerdict, Line, Obstruction,
};
use logalg_core::rearrangement::{
    check_axioms, log_norm, rearrange, rearrange_matrix, NormMode, RearrangementProfile, StepFunction,
};
use logalg_core::trace::{
    build_counterexample, certify_divergence, decide_coincidence, decide_inclusion, Decision, Direction,
    TracePair, Verdict,
};
use num_complex::Complex64;

use crate::document::{CellModelDoc, Document, Element};
use crate::report::Node;
use crate::{Answer, CliError, Command, Inputs, LevelArg};

/// Groups listed in a counterexample report.
pub const REPORTED_GROUPS: usize = 64;
/// Cells listed per reported group.
pub const REPORTED_CELLS: usize = 32;
/// Violations reported with their full inputs.
pub const REPORTED_INPUTS: usize = 16;

pub fn execute(command: &Command, inputs: &mut Inputs<'_>) -> Result<Answer, CliError> {
    match command {
        Command::Validate { file } => validate(inputs.document(file)?),
        Command::Norm { file, element, mode } => {
            let doc = cell_model(inputs.document(file)?)?;
            let (name, el) = pick_element(&doc, element.as_deref())?;
            let mode = NormMode::from(*mode);
            let profile = profile_of(el)?;
            Ok(Answer::yes(Node::obj([
                ("element", Node::from(name)),
                ("mode", Node::from(mode.as_str())),
                ("value", Node::from(log_norm(&profile, mode))),
            ])))
        }
        Command::Rearrange { file, element } => {
            let doc = cell_model(inputs.document(file)?)?;
            let (name, el) = pick_element(&doc, element.as_deref())?;
            let profile = profile_of(el)?;
            Ok(Answer::yes(Node::obj([
                ("element", Node::from(name)),
                ("segments", profile_node(&profile)),
                ("totalLength", Node::from(profile.total_length())),
            ])))
        }
        Command::Inclusion { file, direction } => {
            let tp = trace_pair(inputs.document(file)?)?;
            let direction = Direction::from(*direction);
            let verdict = decide_inclusion(&tp, direction)?;
            Ok(verdict_answer(direction.as_str(), &verdict))
        }
        Command::Coincide { file } => {
            let tp = trace_pair(inputs.document(file)?)?;
            Ok(verdict_answer("both", &decide_coincidence(&tp)?))
        }
        Command::Counterexample { file, terms } => {
            counterexample(trace_pair(inputs.document(file)?)?, *terms)
        }
        Command::Isomorphic { a, b, level } => {
            let (a, b) = (inputs.document(a)?, inputs.document(b)?);
            isomorphic(a, b, *level)
        }
        Command::Axioms { seed, trials, mode } => axioms(*seed, *trials, NormMode::from(*mode)),
    }
}

fn validate(doc: Document) -> Result<Answer, CliError> {
    let summary = match &doc {
        Document::CellModel(cm) => Node::obj([
            ("prefixCells", Node::from(cm.model.prefix().len())),
            ("tail", Node::from(cm.model.tail().is_some())),
            (
                "elements",
                Node::arr(cm.elements.keys().map(|k| Node::from(k.as_str()))),
            ),
        ]),
        Document::Passport(p) => Node::obj([
            ("sLineInfinite", Node::from(p.s_line.is_infinite())),
            ("uLineInfinite", Node::from(p.u_line.is_infinite())),
        ]),
        Document::Algebra(d) => Node::obj([(
            "blockSizes",
            Node::arr(d.blocks().iter().map(|b| Node::from(b.n))),
        )]),
    };
    Ok(Answer::yes(Node::obj([
        ("kind", Node::from(doc.kind())),
        ("valid", Node::from(true)),
        ("summary", summary),
    ])))
}

fn cell_model(doc: Document) -> Result<CellModelDoc, CliError> {
    match doc {
        Document::CellModel(cm) => Ok(*cm),
        other => Err(CliError::Usage(format!(
            "expected a cell-model document, found {}",
            other.kind()
        ))),
    }
}

fn trace_pair(doc: Document) -> Result<TracePair, CliError> {
    Ok(TracePair::new(cell_model(doc)?.model))
}

fn pick_element<'a>(doc: &'a CellModelDoc, name: Option<&str>) -> Result<(&'a str, &'a Element), CliError> {
    let names = || doc.elements.keys().cloned().collect::<Vec<_>>().join(", ");
    match name {
        Some(n) => doc
            .elements
            .get_key_value(n)
            .map(|(k, v)| (k.as_str(), v))
            .ok_or_else(|| CliError::Usage(format!("no element named {n:?} (available: {})", names()))),
        None if doc.elements.len() == 1 => {
            let (k, v) = doc.elements.iter().next().expect("one element");
            Ok((k.as_str(), v))
        }
        None if doc.elements.is_empty() => Err(CliError::Usage("the document has no elements".into())),
        None => Err(CliError::Usage(format!(
            "--element is required (available: {})",
            names()
        ))),
    }
}

fn profile_of(el: &Element) -> Result<RearrangementProfile, CliError> {
    Ok(match el {
        Element::Scalar(f) => rearrange(f),
        Element::Matrix(f) => rearrange_matrix(f)?,
    })
}

fn profile_node(p: &RearrangementProfile) -> Node {
    Node::arr(
        p.segments()
            .iter()
            .map(|s| Node::obj([("length", Node::from(s.length)), ("level", Node::from(s.level))])),
    )
}

fn decision_node(d: &Decision) -> Node {
    let witness = d
        .witness
        .map(|w| Node::obj([("cell", Node::from(w.cell)), ("lnValue", Node::from(w.ln_value))]));
    Node::obj([
        ("examined", Node::from(d.which.to_string())),
        ("label", Node::from(d.label())),
        ("bounded", Node::from(d.bounded)),
        ("bound", Node::opt(d.bound)),
        ("witness", Node::opt(witness)),
    ])
}

fn verdict_answer(direction: &str, v: &Verdict) -> Answer {
    let reason = v.reason();
    Answer::verdict(
        v.holds,
        Node::obj([
            ("direction", Node::from(direction)),
            ("holds", Node::from(v.holds)),
            ("verdict", Node::from(if v.holds { "holds" } else { "fails" })),
            ("reason", Node::from(reason.clone())),
            (
                "obstruction",
                if v.holds { Node::Null } else { Node::from(reason) },
            ),
            ("decisions", Node::arr(v.decisions.iter().map(decision_node))),
        ]),
    )
}

fn counterexample(tp: TracePair, terms: usize) -> Result<Answer, CliError> {
    let inclusion = decide_inclusion(&tp, Direction::MuInNu)?;
    if inclusion.holds {
        return Ok(Answer::verdict(
            false,
            Node::obj([
                ("terms", Node::from(terms)),
                ("verdict", Node::from("no counterexample")),
                ("obstruction", Node::from(inclusion.reason())),
                (
                    "decisions",
                    Node::arr(inclusion.decisions.iter().map(decision_node)),
                ),
            ]),
        ));
    }
    let ce = build_counterexample(&tp, terms)?;
    let cert = certify_divergence(&ce, &tp)?;
    let groups = ce.groups.iter().take(REPORTED_GROUPS).enumerate().map(|(i, g)| {
        let k = i + 1;
        Node::obj([
            ("k", Node::from(k)),
            ("n", Node::from(&g.n)),
            ("cellCount", Node::from(g.cells.len())),
            (
                "cells",
                Node::arr(g.cells.iter().take(REPORTED_CELLS).map(|&c| Node::from(c))),
            ),
            ("mass", Node::from(g.mass())),
            ("g", Node::from(ce.g_value(k))),
            ("f", Node::from(ce.f_value(k))),
        ])
    });
    let certificate = Node::obj([
        ("terms", Node::from(cert.terms)),
        ("muPartial", Node::from(cert.mu_partial)),
        ("muPartialClosedForm", Node::from(cert.mu_partial_closed_form)),
        (
            "routeDifference",
            Node::from((cert.mu_partial - cert.mu_partial_closed_form).abs()),
        ),
        ("nuPartialLower", Node::from(cert.nu_partial_lower)),
        ("nuPartialUpper", Node::from(cert.nu_partial_upper)),
        ("harmonicLower", Node::from(cert.harmonic_lower)),
    ]);
    Ok(Answer::yes(Node::obj([
        ("terms", Node::from(terms)),
        ("verdict", Node::from("counterexample")),
        ("obstruction", Node::from(inclusion.reason())),
        ("groupsReported", Node::from(terms.min(REPORTED_GROUPS))),
        ("groups", Node::arr(groups)),
        ("certificate", certificate),
    ])))
}

fn descriptor(doc: Document) -> Result<AlgebraDescriptor, CliError> {
    match doc {
        Document::Algebra(d) => Ok(d),
        Document::Passport(p) => Ok(AlgebraDescriptor::single(1, p)?),
        Document::CellModel(_) => Err(CliError::Usage(
            "isomorphic expects passport or algebra documents, found cell-model".into(),
        )),
    }
}

fn obstruction_node(o: &Obstruction) -> Node {
    let mut node = Node::obj([
        ("label", Node::from(o.label())),
        ("detail", Node::from(o.to_string())),
    ]);
    match o {
        Obstruction::LineMismatch { line } => {
            node.insert("line", if *line == Line::S { "sLine" } else { "uLine" });
        }
        Obstruction::RatioUnbounded { direction, witness } => {
            node.insert("ratio", direction.as_str());
            node.insert("witness", Node::opt(*witness));
        }
        Obstruction::SizeMismatch { left, right } => {
            node.insert("left", left.clone());
            node.insert("right", right.clone());
        }
        Obstruction::NoBlockMatching { .. } => {}
    }
    node
}

fn isomorphic(a: Document, b: Document, level: LevelArg) -> Result<Answer, CliError> {
    let both_passports = matches!((&a, &b), (Document::Passport(_), Document::Passport(_)));
    let (a, b) = (descriptor(a)?, descriptor(b)?);
    let (decided, v): (&str, IsoVerdict) = if both_passports {
        (
            "commutative",
            decide_commutative(&a.blocks()[0].center, &b.blocks()[0].center)?,
        )
    } else {
        match level {
            LevelArg::Algebra => ("direct-sum", decide_direct_sum(&a, &b)?),
            LevelArg::Center => ("center", decide_center(&a, &b)?),
        }
    };
    // Center-level pairs index the merged centers, not blocks.
    let pair = |(i, j): (usize, usize)| {
        let mut node = Node::obj([("left", Node::from(i)), ("right", Node::from(j))]);
        if decided != "center" {
            node.insert("leftN", a.blocks()[i].n);
            node.insert("rightN", b.blocks()[j].n);
        }
        node
    };
    let mut obstruction = Node::opt(v.obstruction.as_ref().map(obstruction_node));
    obstruction.insert("pair", Node::opt(v.failed_pair.map(pair)));
    let matching = v.matching.as_ref().map(|m| Node::arr(m.iter().map(|&p| pair(p))));
    Ok(Answer::verdict(
        v.isomorphic,
        Node::obj([
            (
                "level",
                Node::from(if level == LevelArg::Algebra {
                    "algebra"
                } else {
                    "center"
                }),
            ),
            ("decision", Node::from(decided)),
            ("isomorphic", Node::from(v.isomorphic)),
            (
                "verdict",
                Node::from(if v.isomorphic {
                    "isomorphic"
                } else {
                    "not isomorphic"
                }),
            ),
            ("matching", Node::opt(matching)),
            ("obstruction", obstruction),
        ]),
    ))
}

fn complex_node(z: Complex64) -> Node {
    Node::arr([Node::from(z.re), Node::from(z.im)])
}

fn step_node(f: &StepFunction) -> Node {
    Node::arr(
        f.cells()
            .iter()
            .map(|c| Node::obj([("mass", Node::from(c.mass)), ("value", complex_node(c.value))])),
    )
}

fn axioms(seed: u64, trials: u64, mode: NormMode) -> Result<Answer, CliError> {
    let report = check_axioms(seed, trials, mode)?;
    let counts = Node::obj(
        logalg_core::rearrangement::AxiomProperty::ALL
            .iter()
            .map(|&p| (p.label(), Node::from(report.count(p)))),
    );
    let violations = report.violations.iter().map(|v| {
        Node::obj([
            ("trial", Node::from(v.trial)),
            ("property", Node::from(v.breach.property.label())),
            ("lhs", Node::from(v.breach.lhs)),
            ("rhs", Node::from(v.breach.rhs)),
        ])
    });
    let inputs = report.violations.iter().take(REPORTED_INPUTS).map(|v| {
        Node::obj([
            ("trial", Node::from(v.trial)),
            ("s", step_node(&v.input.s)),
            ("t", step_node(&v.input.t)),
            ("alpha", complex_node(v.input.alpha)),
        ])
    });
    Ok(Answer::verdict(
        report.is_clean(),
        Node::obj([
            ("seed", Node::from(seed)),
            ("trials", Node::from(trials)),
            ("mode", Node::from(mode.as_str())),
            (
                "prng",
                Node::from("xoshiro256++ per trial, seeded by splitmix64(seed, trial)"),
            ),
            ("clean", Node::from(report.is_clean())),
            ("violationCounts", counts),
            ("decayFailures", Node::from(report.decay_failures)),
            ("violations", Node::arr(violations)),
            ("violationInputs", Node::arr(inputs)),
        ]),
    ))
}
