use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use leech26::codes::{golay12, qr_code, tetracode, Code};
use leech26::diagram::{self, diagram, diagram_constants};
use leech26::isomorphism::{self, search};
use leech26::lattices::{self, Form, SmallVec12};
use leech26::reduction::{self, Certificate, ReductionPolicy};
use leech26::reflections::canonical_unit;
use leech26::relations;
use leech26::rings::linalg::{format_vec, parse_vec};
use leech26::rings::{Cyc, Eis, SqrtThree};
use leech26::Error;

#[derive(Parser)]
#[command(
    name = "leech26",
    version,
    about = "Verifier for the 26-node diagram of the Lorentzian Eisenstein Leech lattice"
)]
struct Cli {
    /// Worker threads for parallel steps; 0 uses all cores. Results do not depend on it.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Ternary and binary codes.
    Codes {
        #[command(subcommand)]
        action: CodesCmd,
    },
    /// Lattice shells.
    Lattice {
        #[command(subcommand)]
        action: LatticeCmd,
    },
    /// The 26 roots and their incidence graph.
    Diagram {
        #[command(subcommand)]
        action: DiagramCmd,
    },
    /// The isomorphism between Λ⊕H and 3E₈⊕H.
    Isom {
        #[command(subcommand)]
        action: IsomCmd,
    },
    /// Height reduction certificates.
    Reduce {
        #[command(subcommand)]
        action: ReduceCmd,
    },
    /// Relations among the diagram reflections.
    Relations {
        #[command(subcommand)]
        action: RelationsCmd,
    },
    /// Runs every check.
    VerifyAll,
}

#[derive(Subcommand)]
enum CodesCmd {
    /// Prints every codeword, digits separated by spaces.
    Dump {
        #[arg(long, value_enum)]
        code: CodeName,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CodeName {
    C4,
    C12,
    C24,
}

#[derive(Subcommand)]
enum LatticeCmd {
    /// Enumerates a shell and writes it in the `a,b` text format.
    Shell {
        #[arg(long, value_enum)]
        lattice: LatticeName,
        #[arg(long, allow_hyphen_values = true)]
        norm: i64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum LatticeName {
    Leech,
    E8,
}

#[derive(Subcommand)]
enum DiagramCmd {
    /// Prints the roots and the incidence matrix.
    Dump,
    /// Checks norms, incidence, constants and heights.
    Check,
}

#[derive(Subcommand)]
enum IsomCmd {
    /// Checks a pair of bases and writes the change of basis.
    Verify {
        #[arg(long)]
        e1: Option<PathBuf>,
        #[arg(long)]
        e2: Option<PathBuf>,
        #[arg(long, default_value = "C.txt")]
        out: PathBuf,
    },
    /// Rebuilds a basis of Λ⊕H with the Gram matrix of E₂ from a shell of Λ.
    Search {
        #[arg(long)]
        shell: PathBuf,
    },
}

#[derive(Subcommand)]
enum ReduceCmd {
    /// Certifies the generators and writes one certificate per generator.
    Run {
        #[arg(long)]
        all: bool,
        #[arg(long, default_value = "certificates")]
        out: PathBuf,
    },
    /// Replays every certificate in a directory.
    Check { dir: PathBuf },
}

#[derive(Subcommand)]
enum RelationsCmd {
    /// Checks the spider, deflation, Coxeter and hand-flip relations.
    Verify {
        #[arg(long)]
        all: bool,
    },
}

/// Why a command did not pass.
enum Failure {
    Verification(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Io { .. } | Error::Unsupported(_) => Failure::Usage(e.to_string()),
            _ => Failure::Verification(e.to_string()),
        }
    }
}

type Outcome = Result<bool, Failure>;

/// Collects `key: value` lines and the overall verdict.
struct Report {
    pass: bool,
}

impl Report {
    fn new() -> Self {
        Report { pass: true }
    }

    fn kv(&self, key: &str, value: impl Display) {
        println!("{key}: {value}");
    }

    fn check(&mut self, key: &str, ok: bool) {
        self.pass &= ok;
        println!("{key}: {}", if ok { "ok" } else { "FAIL" });
    }

    fn finish(self) -> bool {
        println!("RESULT: {}", if self.pass { "PASS" } else { "FAIL" });
        self.pass
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Verification(m)) => {
            eprintln!("error: {m}");
            println!("RESULT: FAIL");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Codes { action: CodesCmd::Dump { code } } => codes_dump(code),
        Command::Lattice { action: LatticeCmd::Shell { lattice, norm, out } } => lattice_shell(lattice, norm, &out),
        Command::Diagram { action: DiagramCmd::Dump } => diagram_dump(),
        Command::Diagram { action: DiagramCmd::Check } => {
            let mut r = Report::new();
            diagram_check(&mut r)?;
            Ok(r.finish())
        }
        Command::Isom { action: IsomCmd::Verify { e1, e2, out } } => isom_verify(e1.as_deref(), e2.as_deref(), &out),
        Command::Isom { action: IsomCmd::Search { shell } } => isom_search(&shell),
        Command::Reduce { action: ReduceCmd::Run { all, out } } => {
            if !all {
                return Err(Failure::Usage("reduce run needs --all".into()));
            }
            reduce_run(&out)
        }
        Command::Reduce { action: ReduceCmd::Check { dir } } => reduce_check(&dir),
        Command::Relations { action: RelationsCmd::Verify { all } } => {
            if !all {
                return Err(Failure::Usage("relations verify needs --all".into()));
            }
            let mut r = Report::new();
            relations_verify(&mut r)?;
            Ok(r.finish())
        }
        Command::VerifyAll => verify_all(),
    }
}

fn io_err(path: &Path, e: std::io::Error) -> Failure {
    Failure::Usage(format!("{}: {e}", path.display()))
}

fn codes_dump(code: CodeName) -> Outcome {
    let join = |w: &mut dyn Iterator<Item = String>| w.collect::<Vec<_>>().join(" ");
    let mut out = String::new();
    match code {
        CodeName::C4 | CodeName::C12 => {
            let c = if matches!(code, CodeName::C4) { tetracode() } else { golay12() };
            for w in c.words() {
                out.push_str(&join(&mut w.iter().map(|d| d.rem_euclid(3).to_string())));
                out.push('\n');
            }
        }
        CodeName::C24 => {
            let Code::Binary(c) = qr_code(23)? else {
                return Err(Failure::Verification("qr_code(23) is not binary".into()));
            };
            for w in c.words() {
                out.push_str(&join(&mut w.iter().map(u8::to_string)));
                out.push('\n');
            }
        }
    }
    // a closed pipe (e.g. `| head`) is not an error
    let _ = std::io::Write::write_all(&mut std::io::stdout().lock(), out.as_bytes());
    Ok(true)
}

fn write_shell(path: &Path, shell: &[SmallVec12]) -> Result<(), Failure> {
    let mut text = String::with_capacity(shell.len() * 64);
    for v in shell {
        text.push_str(&format_vec(&lattices::small_to_evec(v)));
        text.push('\n');
    }
    std::fs::write(path, text).map_err(|e| io_err(path, e))
}

fn read_shell(path: &Path) -> Result<Vec<SmallVec12>, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let mut shell = Vec::new();
    for (k, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
        let v = parse_vec(line).map_err(|e| Failure::Usage(format!("{}:{}: {e}", path.display(), k + 1)))?;
        let s = lattices::evec_to_small(&v)
            .ok_or_else(|| Failure::Usage(format!("{}:{}: not a 12-entry small vector", path.display(), k + 1)))?;
        shell.push(s);
    }
    Ok(shell)
}

fn lattice_shell(lattice: LatticeName, norm: i64, out: &Path) -> Outcome {
    let mut r = Report::new();
    match lattice {
        LatticeName::Leech => {
            let shell = lattices::shell_leech(norm)?;
            write_shell(out, &shell)?;
            r.kv("lattice", "leech");
            r.kv("count", shell.len());
            if norm == -6 {
                r.check("count_196560", shell.len() == 196560);
            }
        }
        LatticeName::E8 => {
            let shell = lattices::shell_e8(norm)?;
            let text: String = shell.iter().map(|v| format_vec(v) + "\n").collect();
            std::fs::write(out, text).map_err(|e| io_err(out, e))?;
            r.kv("lattice", "e8");
            r.kv("count", shell.len());
            if norm == -3 {
                r.check("count_240", shell.len() == 240);
            }
        }
    }
    r.kv("norm", norm);
    r.kv("out", out.display());
    Ok(r.finish())
}

fn diagram_dump() -> Outcome {
    let d = diagram();
    println!("# roots");
    for n in &d.nodes {
        println!("{}: {}", n.name, format_vec(&n.root));
    }
    println!("# incidence (rows: lines, columns: points)");
    for row in &d.plane.incidence {
        println!("{}", row.iter().map(|&b| if b { "1" } else { "0" }).collect::<Vec<_>>().join(" "));
    }
    Ok(true)
}

fn diagram_check(r: &mut Report) -> Result<(), Failure> {
    let d = diagram();
    let f = Form::E8H;
    r.check("root_norms", (0..26).all(|i| *d.gram.get(i, i) == Eis::int(-3)));
    r.check("adjacency_is_incidence", d.adjacency_matches_incidence());
    let c = diagram_constants();
    let rho = f.ip_cyc(&c.rho_plus, &c.rho_plus).as_real();
    r.check("weyl_norm", rho == Some(SqrtThree::from_ints(-78, 104)));
    let wp_rho = f.ip_cyc(&diagram::to_cyc(&c.w_p), &c.rho_plus);
    r.check("wp_rho", wp_rho == &Cyc::sqrt3() * &Cyc::new([13, 0, 0, 0]));
    r.check("wp_wl", f.ip(&c.w_p, &c.w_l) == -(&Eis::theta() * &Eis::omega()).scale(&4.into()));
    let det = f.gram_of(&[c.w_p.clone(), c.w_l.clone()]).det();
    r.kv("disc_f", -&det);
    r.check("disc_f_39", det == Eis::int(-39) && diagram::is_primitive_pair(&c.w_p, &c.w_l));
    r.check("heights", (0..26).all(|i| diagram::height_sq(d.root(i)) == SqrtThree::one()));
    Ok(())
}

fn automorphism_check(r: &mut Report) -> Result<(), Failure> {
    let (x, y) = diagram::presentation_generators();
    let gx = diagram::g_action(&x)?;
    let gy = diagram::g_action(&y)?;
    r.check("presentation", diagram::satisfies_presentation(&x, &y));
    let s = diagram::sigma()?;
    r.check("sigma_order_12", s.pow(12).is_identity());
    r.check("sigma_squared", s.matrix.pow(2).is_scalar(&-Eis::omega()));
    r.check("form_preserving", [&gx, &gy, &s].iter().all(|m| m.preserves_form(&Form::E8H)));
    Ok(())
}

fn isom_verify(e1: Option<&Path>, e2: Option<&Path>, out: &Path) -> Outcome {
    let rows = |p: Option<&Path>, default: fn() -> leech26::Result<Vec<leech26::rings::EVec>>| match p {
        Some(p) => leech26::data::read_matrix_file(p).map(|m| m.row_vecs()).map_err(usage),
        None => default().map_err(Failure::from),
    };
    let e1 = rows(e1, isomorphism::e1_rows)?;
    let e2 = rows(e2, || Ok(isomorphism::e2_rows()))?;
    let cob = isomorphism::verify_change_of_basis(&e1, &e2)?;
    let c = &cob.c.matrix;
    let text = format!("# C = num / {}\n{}", c.den, c.num);
    std::fs::write(out, text).map_err(|e| io_err(out, e))?;
    let mut r = Report::new();
    report_change(&mut r, &cob);
    r.kv("out", out.display());
    Ok(r.finish())
}

fn usage(e: Error) -> Failure {
    Failure::Usage(e.to_string())
}

fn report_change(r: &mut Report, cob: &isomorphism::ChangeOfBasis) {
    r.check("gram_equal", cob.gram_equal);
    r.check("c_integral", cob.c_integral);
    r.check("c_inv_integral", cob.c_inv_integral);
    r.check("form_preserving", cob.form_preserving);
}

fn isom_search(shell: &Path) -> Outcome {
    let shell = read_shell(shell)?;
    let rep = search::run_search(&shell)?;
    let mut r = Report::new();
    r.kv("shell", shell.len());
    r.check("simplex", rep.simplex.verify());
    r.kv("quadruples", rep.quadruples);
    r.kv("orthogonal_pairs", rep.orthogonal_pairs);
    r.kv("chosen_pair", rep.chosen_pair);
    r.kv("near", rep.near);
    r.kv("candidates", rep.candidates);
    r.kv("candidates_expected", 8);
    let dist: Vec<String> = rep.candidate_distribution.iter().map(|(k, v)| format!("{k}x{v}")).collect();
    r.kv("candidate_distribution", dist.join(" "));
    report_change(&mut r, &rep.change);
    Ok(r.finish())
}

fn cert_path(dir: &Path, j: usize) -> PathBuf {
    dir.join(format!("g{j:02}.cert"))
}

fn reduce_run(out: &Path) -> Outcome {
    let gens = reduction::standard_generators()?;
    let run = reduction::certify_all(&gens, &ReductionPolicy::default())?;
    std::fs::create_dir_all(out).map_err(|e| io_err(out, e))?;
    for (k, c) in run.certificates.iter().enumerate() {
        let p = cert_path(out, k + 1);
        std::fs::write(&p, c.to_text()).map_err(|e| io_err(&p, e))?;
    }
    let check = reduction::check_run(&run.certificates, &gens);
    let mut r = Report::new();
    r.kv("generators", gens.len());
    r.kv("certificates", run.certificates.len());
    r.kv("max_perturbations", check.max_perturbations);
    r.check("max_one_perturbation", check.max_perturbations <= 1);
    r.check("replay", check.ok());
    r.kv("out", out.display());
    Ok(r.finish())
}

fn reduce_check(dir: &Path) -> Outcome {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| io_err(dir, e))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "cert"))
        .collect();
    files.sort();
    let gens = reduction::standard_generators()?;
    let mut r = Report::new();
    let mut certs = Vec::new();
    for p in &files {
        let text = std::fs::read_to_string(p).map_err(|e| io_err(p, e))?;
        match Certificate::parse(&text) {
            Ok(c) => certs.push(c),
            Err(e) => r.check(&format!("parse {}: {e}", p.display()), false),
        }
    }
    let check = reduction::check_run(&certs, &gens);
    for (g, res) in &check.results {
        if let Err(e) = res {
            r.check(&format!("g{g}: {e:?}"), false);
        }
    }
    r.kv("files", files.len());
    r.kv("max_perturbations", check.max_perturbations);
    r.check("complete", check.complete);
    r.check("dependencies", check.dependencies_ok);
    r.check("replay", check.results.iter().all(|(_, x)| x.is_ok()));
    Ok(r.finish())
}

fn relations_verify(r: &mut Report) -> Result<(), Failure> {
    println!("{:<24} {:<6} order", "relation", "status");
    let status = |ok: bool| if ok { "ok" } else { "FAIL" };
    let spider = relations::spider_check()?;
    println!("{:<24} {:<6} {}", spider.name, status(spider.holds), spider.order);
    let (deflate, _) = relations::deflate_check()?;
    println!("{:<24} {:<6} {}", deflate.name, status(deflate.holds), deflate.order);
    let table = relations::coxeter_table()?;
    for row in &table {
        println!("{:<24} {:<6} {}", format!("coxeter {}", row.dynkin), status(row.ok()), row.order);
    }
    let flips = relations::standard_phi_flips()?;
    println!("{:<24} {:<6} {}", "hand flips <phi12,phi23>", status(flips.ok()), flips.group_order);
    r.check("spider", spider.holds);
    r.check("deflation", deflate.holds);
    r.check("coxeter_table", table.iter().all(|row| row.ok()));
    r.check("hand_flips", flips.ok());
    Ok(())
}

fn scan_is_nodes() -> Result<bool, Failure> {
    let d = diagram();
    let key = |v: &leech26::rings::EVec| format!("{v:?}");
    let mut got = reduction::min_height_scan()?;
    let mut want: Vec<_> = (0..26).map(|i| canonical_unit(d.root(i))).collect();
    got.sort_by_key(key);
    want.sort_by_key(key);
    Ok(got == want)
}

fn verify_all() -> Outcome {
    let mut r = Report::new();
    let c12 = golay12();
    r.check("codes", tetracode().words().len() == 9 && c12.words().len() == 729);
    let l = lattices::HermitianLattice { name: "L".into(), form: Form::LEECH_H, basis: lattices::leech_h_basis()? };
    r.check("disc_l_2187", lattices::discriminant(&l) == 2187.into());
    r.check("e8_shell_240", lattices::shell_e8(-3)?.len() == 240);
    r.check("leech_shell_196560", lattices::shell_leech(-6)?.len() == 196560);
    diagram_check(&mut r)?;
    automorphism_check(&mut r)?;
    report_change(&mut r, &isomorphism::standard_change_of_basis()?);
    let gens = reduction::standard_generators()?;
    let run = reduction::certify_all(&gens, &ReductionPolicy::default())?;
    let check = reduction::check_run(&run.certificates, &gens);
    r.check("certificates", check.ok() && check.max_perturbations <= 1);
    r.check("min_height_scan", scan_is_nodes()?);
    relations_verify(&mut r)?;
    Ok(r.finish())
}
