//! Command-line front end.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{ArgAction, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::io::{self, parse_terminator, Alphabet, InputFormat};
use crate::lcp::{build_lcp_with, LcpOptions, LcpReport, LcpStrategy, LcpWidth};
use crate::merge::{interleave, merge_da_with, merge_with_lcp, MergeReport};
use crate::oracle::{naive_bwt, naive_da, naive_lcp, Collection};
use crate::succinct::{packed_dna::PACKED_MAX_SIGMA, PackedDnaText, SuccinctText, TextIndex};
use crate::traversal::{QueueConfig, Strategy, TraversalStats};

#[derive(Parser, Debug)]
#[command(
    name = "bwtkit",
    version,
    about = "LCP arrays and BWT merging in small space"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
enum Algorithm {
    #[default]
    Auto,
    Bgos,
    Stack,
    Queue,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
enum Format {
    #[default]
    Lines,
    Fasta,
}

impl From<Format> for InputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Lines => InputFormat::Lines,
            Format::Fasta => InputFormat::Fasta,
        }
    }
}

#[derive(clap::Args, Debug, Clone, Copy)]
struct Tuning {
    /// Node and leaf traversal strategy
    #[arg(long, value_enum, default_value_t = Algorithm::Auto)]
    algorithm: Algorithm,
    /// Items per queue layer before switching to bitvectors (default n / log2 n)
    #[arg(long, value_name = "N")]
    queue_threshold: Option<usize>,
}

impl Tuning {
    fn lcp_options(self, width: LcpWidth) -> LcpOptions {
        let (strategy, leaf_strategy) = match self.algorithm {
            Algorithm::Auto => (LcpStrategy::Auto, Strategy::Auto),
            Algorithm::Bgos => (LcpStrategy::Bgos, Strategy::Auto),
            Algorithm::Stack => (LcpStrategy::Stack, Strategy::Stack),
            Algorithm::Queue => (LcpStrategy::Bgos, Strategy::Queue),
        };
        LcpOptions {
            strategy,
            width,
            leaf_strategy,
            queue: QueueConfig {
                switch_threshold: self.queue_threshold,
            },
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build the BWT of a small collection by sorting its suffixes (quadratic; test corpora only)
    BuildBwt {
        input: PathBuf,
        output: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Lines)]
        format: Format,
        #[arg(long, value_parser = parse_terminator, default_value = "#")]
        terminator: u8,
    },
    /// Compute the LCP array of a collection from its BWT
    Lcp {
        bwt: PathBuf,
        output: PathBuf,
        #[arg(long, default_value_t = 4, value_parser = parse_width)]
        lcp_bytes: usize,
        #[command(flatten)]
        tuning: Tuning,
        #[arg(long, value_parser = parse_terminator, default_value = "#")]
        terminator: u8,
    },
    /// Merge two BWTs: write the document array and optionally the merged BWT and LCP
    Merge {
        bwt1: PathBuf,
        bwt2: PathBuf,
        da_out: PathBuf,
        #[arg(long)]
        bwt_out: Option<PathBuf>,
        #[arg(long)]
        lcp_out: Option<PathBuf>,
        #[arg(long, default_value_t = 4, value_parser = parse_width)]
        lcp_bytes: usize,
        #[command(flatten)]
        tuning: Tuning,
        /// Pack the document array 8 entries per byte (otherwise one ASCII digit each)
        #[arg(long, default_value_t = true, action = ArgAction::Set)]
        packed_da: bool,
        #[arg(long, value_parser = parse_terminator, default_value = "#")]
        terminator: u8,
    },
    /// Recompute artifacts from the collection by brute force and compare
    Verify {
        input: PathBuf,
        /// Second collection; artifacts then describe the union and the document array applies
        #[arg(long)]
        second: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Lines)]
        format: Format,
        #[arg(long)]
        bwt: Option<PathBuf>,
        #[arg(long)]
        lcp: Option<PathBuf>,
        #[arg(long, default_value_t = 4, value_parser = parse_width)]
        lcp_bytes: usize,
        #[arg(long)]
        da: Option<PathBuf>,
        #[arg(long, default_value_t = true, action = ArgAction::Set)]
        packed_da: bool,
        #[arg(long, value_parser = parse_terminator, default_value = "#")]
        terminator: u8,
    },
    /// Print alphabet, counts and the strategies the toolkit would pick
    Stats {
        bwt: PathBuf,
        #[arg(long, value_parser = parse_terminator, default_value = "#")]
        terminator: u8,
    },
}

fn parse_width(s: &str) -> Result<usize, String> {
    let w: usize = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    LcpWidth::from_bytes(w)
        .map(LcpWidth::bytes)
        .map_err(|e| e.to_string())
}

/// Process exit status for an error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Io { .. } | Error::Stream(_) => 1,
        Error::LcpWidthOverflow { .. } => 3,
        Error::Mismatch { .. } => 4,
        _ => 2,
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("bwtkit: {e}");
            exit_code(&e)
        }
    }
}

fn dispatch(command: Command) -> Result<()> {
    match command {
        Command::BuildBwt {
            input,
            output,
            format,
            terminator,
        } => cmd_build_bwt(&input, &output, format.into(), terminator),
        Command::Lcp {
            bwt,
            output,
            lcp_bytes,
            tuning,
            terminator,
        } => cmd_lcp(
            &bwt,
            &output,
            &tuning.lcp_options(LcpWidth::from_bytes(lcp_bytes)?),
            terminator,
        ),
        Command::Merge {
            bwt1,
            bwt2,
            da_out,
            bwt_out,
            lcp_out,
            lcp_bytes,
            tuning,
            packed_da,
            terminator,
        } => cmd_merge(
            [&bwt1, &bwt2],
            &da_out,
            bwt_out.as_deref(),
            lcp_out.as_deref(),
            &tuning.lcp_options(LcpWidth::from_bytes(lcp_bytes)?),
            packed_da,
            terminator,
        ),
        Command::Verify {
            input,
            second,
            format,
            bwt,
            lcp,
            lcp_bytes,
            da,
            packed_da,
            terminator,
        } => cmd_verify(VerifyArgs {
            input: &input,
            second: second.as_deref(),
            format: format.into(),
            bwt: bwt.as_deref(),
            lcp: lcp.as_deref(),
            width: LcpWidth::from_bytes(lcp_bytes)?,
            da: da.as_deref(),
            packed_da,
            terminator,
        }),
        Command::Stats { bwt, terminator } => cmd_stats(&bwt, terminator),
    }
}

pub fn cmd_build_bwt(
    input: &Path,
    output: &Path,
    format: InputFormat,
    terminator: u8,
) -> Result<()> {
    let (collection, alphabet) = io::read_collection(input, format, terminator)?;
    let bwt = alphabet.decode(&naive_bwt(&collection));
    io::write_bytes(output, &bwt)?;
    eprintln!(
        "strings={} n={} sigma={}",
        collection.num_strings(),
        bwt.len(),
        alphabet.distinct()
    );
    Ok(())
}

fn describe(stats: &TraversalStats) -> String {
    let strategy = stats
        .strategy
        .map(|s| s.to_string())
        .unwrap_or_else(|| "-".into());
    format!(
        "{strategy} (visited={} peak_stack={} queue_pushes={} bit_layers={} peak_bytes={})",
        stats.visited, stats.peak_stack, stats.queue_pushes, stats.bit_layers, stats.peak_bytes
    )
}

fn report_lcp(backend: &str, index_bytes: usize, n: usize, sigma: usize, r: &LcpReport) {
    eprintln!("n={n} sigma={sigma} backend={backend} index_bytes={index_bytes}");
    eprintln!("node-type: {} {}", r.branch, describe(&r.node));
    eprintln!("leaf-type: {}", describe(&r.leaves));
    eprintln!(
        "peak auxiliary memory: {} bytes ({:.3} bits per symbol)",
        r.aux_bytes,
        8.0 * r.aux_bytes as f64 / n as f64
    );
}

pub fn cmd_lcp(bwt: &Path, output: &Path, options: &LcpOptions, terminator: u8) -> Result<()> {
    let raw = io::read_bwt(bwt, terminator)?;
    let alphabet = Alphabet::from_data(terminator, [raw.as_slice()]);
    let symbols = alphabet.encode(&raw)?;
    let sigma = alphabet.sigma();
    let (lcp, report, backend, index_bytes) = if sigma <= PACKED_MAX_SIGMA {
        let st = PackedDnaText::new(&symbols, sigma)?;
        let (lcp, report) = build_lcp_with(&st, options)?;
        (lcp, report, "packed", st.size_in_bytes())
    } else {
        let st = SuccinctText::new(&symbols, sigma)?;
        let (lcp, report) = build_lcp_with(&st, options)?;
        (lcp, report, "wavelet", st.size_in_bytes())
    };
    drop(symbols);
    report_lcp(
        backend,
        index_bytes,
        raw.len(),
        alphabet.distinct(),
        &report,
    );
    io::write_lcp(output, &lcp)
}

fn report_merge(backend: &str, leaves: &TraversalStats, lcp: Option<&MergeReport>) {
    eprintln!("backend={backend}");
    eprintln!("leaves: {}", describe(leaves));
    if let Some(r) = lcp {
        eprintln!("node-type: {} {}", r.branch, describe(&r.node));
        eprintln!("peak auxiliary memory: {} bytes", r.aux_bytes);
    }
}

pub fn cmd_merge(
    bwts: [&Path; 2],
    da_out: &Path,
    bwt_out: Option<&Path>,
    lcp_out: Option<&Path>,
    options: &LcpOptions,
    packed_da: bool,
    terminator: u8,
) -> Result<()> {
    let raw1 = io::read_bwt(bwts[0], terminator)?;
    let raw2 = io::read_bwt(bwts[1], terminator)?;
    let alphabet = Alphabet::from_data(terminator, [raw1.as_slice(), raw2.as_slice()]);
    let (s1, s2) = (alphabet.encode(&raw1)?, alphabet.encode(&raw2)?);
    let sigma = alphabet.sigma();
    eprintln!(
        "n1={} n2={} sigma={}",
        raw1.len(),
        raw2.len(),
        alphabet.distinct()
    );

    macro_rules! run_merge {
        ($ty:ty, $name:expr) => {{
            let st1 = <$ty>::new(&s1, sigma)?;
            let st2 = <$ty>::new(&s2, sigma)?;
            if lcp_out.is_some() {
                let (da, lcp, report) = merge_with_lcp(&st1, &st2, options)?;
                report_merge($name, &report.leaves, Some(&report));
                (da, Some(lcp))
            } else {
                let (da, stats) = merge_da_with(&st1, &st2, options.leaf_strategy, &options.queue)?;
                report_merge($name, &stats, None);
                (da, None)
            }
        }};
    }
    let (da, lcp) = if sigma <= PACKED_MAX_SIGMA {
        run_merge!(PackedDnaText, "packed")
    } else {
        run_merge!(SuccinctText, "wavelet")
    };

    io::write_da(da_out, &da, packed_da)?;
    if let Some(path) = bwt_out {
        io::write_atomic(path, |w| interleave(&raw1, &raw2, &da, &mut &mut *w))?;
    }
    if let (Some(path), Some(lcp)) = (lcp_out, lcp) {
        io::write_lcp(path, &lcp)?;
    }
    Ok(())
}

pub struct VerifyArgs<'a> {
    pub input: &'a Path,
    pub second: Option<&'a Path>,
    pub format: InputFormat,
    pub bwt: Option<&'a Path>,
    pub lcp: Option<&'a Path>,
    pub width: LcpWidth,
    pub da: Option<&'a Path>,
    pub packed_da: bool,
    pub terminator: u8,
}

fn first_mismatch<T: PartialEq + ToString>(
    artifact: &str,
    expected: &[T],
    found: &[T],
) -> Result<()> {
    if let Some(k) = expected.iter().zip(found).position(|(a, b)| a != b) {
        return Err(Error::Mismatch {
            artifact: artifact.into(),
            pos: k + 1,
            expected: expected[k].to_string(),
            found: found[k].to_string(),
        });
    }
    if expected.len() != found.len() {
        let k = expected.len().min(found.len());
        let show = |v: &[T]| v.get(k).map_or("end of data".to_string(), T::to_string);
        return Err(Error::Mismatch {
            artifact: artifact.into(),
            pos: k + 1,
            expected: show(expected),
            found: show(found),
        });
    }
    eprintln!("{artifact}: ok ({} entries)", expected.len());
    Ok(())
}

pub fn cmd_verify(args: VerifyArgs<'_>) -> Result<()> {
    if args.bwt.is_none() && args.lcp.is_none() && args.da.is_none() {
        return Err(Error::InputDomain(
            "nothing to verify; pass --bwt, --lcp or --da".into(),
        ));
    }
    let read = |p: &Path| io::parse_collection(&io::read_file(p)?, args.format, args.terminator);
    let first = read(args.input)?;
    let second = args.second.map(read).transpose()?;
    let alphabet = Alphabet::from_data(
        args.terminator,
        first
            .iter()
            .chain(second.iter().flatten())
            .map(Vec::as_slice),
    );
    let c1 = io::encode_collection(&first, &alphabet)?;
    let c2 = second
        .as_ref()
        .map(|s| io::encode_collection(s, &alphabet))
        .transpose()?;
    let union = match &c2 {
        Some(c2) => c1.concat(c2),
        None => c1.clone(),
    };

    if let Some(path) = args.bwt {
        let expected = alphabet.decode(&naive_bwt(&union));
        let found = io::read_file(path)?;
        let show = |v: &[u8]| -> Vec<char> { v.iter().map(|&b| b as char).collect() };
        first_mismatch("BWT", &show(&expected), &show(&found))?;
    }
    if let Some(path) = args.lcp {
        let found = io::read_lcp(path, args.width)?;
        first_mismatch("LCP", &naive_lcp(&union), &found)?;
    }
    if let Some(path) = args.da {
        let c2: &Collection = c2.as_ref().ok_or_else(|| {
            Error::InputDomain("--da needs the second collection (--second)".into())
        })?;
        let expected: Vec<u8> = naive_da(&c1, c2).into_iter().map(u8::from).collect();
        let found: Vec<u8> = io::read_da(path, expected.len(), args.packed_da)?
            .to_vec()
            .into_iter()
            .map(u8::from)
            .collect();
        first_mismatch("DA", &expected, &found)?;
    }
    Ok(())
}

pub fn cmd_stats(bwt: &Path, terminator: u8) -> Result<()> {
    let raw = io::read_bwt(bwt, terminator)?;
    let alphabet = Alphabet::from_data(terminator, [raw.as_slice()]);
    let symbols = alphabet.encode(&raw)?;
    let (n, sigma) = (raw.len(), alphabet.sigma());
    let mut counts = vec![0usize; alphabet.distinct()];
    for &c in &symbols {
        counts[c as usize] += 1;
    }
    println!("n\t{n}");
    println!("sigma\t{}", alphabet.distinct());
    println!("strings\t{}", counts[0]);
    for (&b, &count) in alphabet.bytes().iter().zip(&counts) {
        println!("count\t{}\t{count}", show_byte(b));
    }
    let backend = if sigma <= PACKED_MAX_SIGMA {
        (
            "packed",
            PackedDnaText::new(&symbols, sigma)?.size_in_bytes(),
        )
    } else {
        (
            "wavelet",
            SuccinctText::new(&symbols, sigma)?.size_in_bytes(),
        )
    };
    println!("backend\t{}\t{} bytes", backend.0, backend.1);
    println!("node-type\t{}", LcpStrategy::Auto.resolve(sigma, n));
    println!("leaf-traversal\t{}", Strategy::Auto.resolve(sigma, n));
    Ok(())
}

fn show_byte(b: u8) -> String {
    if b.is_ascii_graphic() {
        (b as char).to_string()
    } else {
        format!("0x{b:02x}")
    }
}
