//! Command definitions and drivers for the `soomp` binary.

use std::fs;
use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use soomp::audio::{self, Method, StereoApproximation};
use soomp::codec::{self, DictionarySpec, EncodeOptions};
use soomp::{Dictionary, DictionaryKind, Pursuit, SignalSet};

use crate::bench;
use crate::config::{self, FileConfig};
use crate::csvio;
use crate::error::{Result, ToolError};
use crate::mitbih;
use crate::report::{
    aligned_table, AudioConfig, AudioGroup, AudioReport, AudioRow, CompressConfig,
    CompressReport, DecompressConfig, DecompressReport, RecordReport, StreamBytes,
};
use crate::synth;
use crate::wav;

#[derive(Debug, Parser)]
#[command(
    name = "soomp",
    version,
    about = "Simultaneous sparse approximation: ECG codec and stereo sparsity benchmark"
)]
pub struct Cli {
    /// TOML file supplying defaults for flags left unset.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compress an ECG record into a .secg container.
    Compress(CompressArgs),
    /// Reconstruct a record from a .secg container.
    Decompress(DecompressArgs),
    /// Compare SOOMP against SOMP sparsity on a stereo signal.
    AudioBench(AudioBenchArgs),
    /// Trace per-iteration pursuit internals on a random instance.
    PursuitDemo(PursuitDemoArgs),
}

pub fn run(cli: Cli) -> Result<()> {
    let file = config::load(cli.config.as_deref())?;
    match cli.command {
        Command::Compress(args) => compress(args, &file),
        Command::Decompress(args) => decompress(args, &file),
        Command::AudioBench(args) => audio_bench(args, &file),
        Command::PursuitDemo(args) => pursuit_demo(args, &file),
    }
}

#[derive(Debug, Args)]
pub struct CompressArgs {
    /// Input record: CSV with one sample per line, or an MIT-BIH .dat file.
    #[arg(long, value_name = "FILE")]
    pub input: Option<PathBuf>,

    /// Comma-separated record ids for batch mode, resolved in --data-dir.
    #[arg(long, value_name = "IDS", value_delimiter = ',')]
    pub records: Vec<String>,

    /// Directory holding the batch records.
    #[arg(long, value_name = "DIR")]
    pub data_dir: Option<PathBuf>,

    /// Container path for single-record mode. Defaults to the input with
    /// a .secg extension.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,

    /// Directory for batch outputs. Defaults to the working directory.
    #[arg(long, value_name = "DIR")]
    pub out_dir: Option<PathBuf>,

    /// Target normalized percent root-mean-square difference.
    #[arg(long, value_name = "PRDN")]
    pub target_prdn: Option<f64>,

    /// Input format: csv or mitbih212.
    #[arg(long, value_name = "FMT")]
    pub format: Option<String>,

    /// Sampling rate in Hz for CSV inputs; MIT-BIH headers carry their own.
    #[arg(long, value_name = "HZ")]
    pub fs: Option<f64>,

    /// Dictionary family: cdf97, rdct, rdst, or trig.
    #[arg(long, value_name = "FAMILY")]
    pub dictionary: Option<String>,

    /// Wavelet decomposition depth, used by cdf97 only.
    #[arg(long)]
    pub level: Option<u8>,

    /// Hard cap on selected atoms for the whole record.
    #[arg(long)]
    pub max_atoms: Option<usize>,

    /// CSV of R-peak sample indices that bypasses the detector.
    #[arg(long, value_name = "FILE")]
    pub peaks: Option<PathBuf>,

    /// Signal channel for multi-channel inputs.
    #[arg(long)]
    pub channel: Option<usize>,

    /// Worker threads for batch mode.
    #[arg(long)]
    pub jobs: Option<usize>,

    /// JSON report path. Defaults next to the container (single mode) or
    /// to report.json in the output directory (batch mode).
    #[arg(long, value_name = "FILE")]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Csv,
    MitBih212,
}

fn parse_format(name: &str) -> Result<Format> {
    match name {
        "csv" => Ok(Format::Csv),
        "mitbih212" => Ok(Format::MitBih212),
        other => Err(ToolError::Validation(format!(
            "unknown input format {other:?}; expected csv or mitbih212"
        ))),
    }
}

fn parse_family(name: &str) -> Result<DictionaryKind> {
    match name {
        "cdf97" => Ok(DictionaryKind::Cdf97),
        "rdct" => Ok(DictionaryKind::Rdct),
        "rdst" => Ok(DictionaryKind::Rdst),
        "trig" => Ok(DictionaryKind::TrigUnion),
        other => Err(ToolError::Validation(format!(
            "unknown dictionary family {other:?}; expected cdf97, rdct, rdst, or trig"
        ))),
    }
}

struct Job {
    id: String,
    input: PathBuf,
    output: PathBuf,
}

struct EncodeSettings {
    target: f64,
    fs: f64,
    format: Format,
    channel: usize,
    dictionary: DictionarySpec,
    max_atoms: Option<usize>,
}

fn encode_one(
    job: &Job,
    set: &EncodeSettings,
    peaks: Option<&[usize]>,
) -> Result<(RecordReport, Vec<u8>)> {
    let (samples, fs) = match set.format {
        Format::Csv => (csvio::read_samples(&job.input)?, set.fs),
        Format::MitBih212 => {
            let rec = mitbih::read_record(&job.input, set.channel)?;
            (rec.samples, rec.sample_rate)
        }
    };
    let opts = EncodeOptions {
        dictionary: set.dictionary,
        max_atoms: set.max_atoms,
        peaks: peaks.map(|p| p.to_vec()),
    };

    let start = Instant::now();
    let encoded = codec::encode_record(&samples, fs, set.target, &opts)
        .map_err(|e| ToolError::pipeline("encode", e))?;
    let encode_ms = start.elapsed().as_secs_f64() * 1e3;

    let start = Instant::now();
    let decoded = codec::decode_record(&encoded.bytes)
        .map_err(|e| ToolError::pipeline("verify", e))?;
    let decode_ms = start.elapsed().as_secs_f64() * 1e3;
    if decoded.samples.len() != samples.len() {
        return Err(ToolError::Validation(format!(
            "verify: round trip produced {} samples for a {}-sample record",
            decoded.samples.len(),
            samples.len()
        )));
    }

    let c = &encoded.container;
    let report = RecordReport {
        record: job.id.clone(),
        samples: samples.len(),
        beats: c.beat_count as usize,
        atoms: c.atom_indices.len(),
        target_prdn: set.target,
        achieved_prdn: encoded.achieved_prdn,
        compression_ratio: encoded.compression_ratio,
        container_bytes: encoded.bytes.len(),
        stream_bytes: StreamBytes {
            magnitudes: c.magnitudes.bytes.len(),
            signs: c.signs.bytes.len(),
            positions: c.position_deltas.bytes.len(),
            beat_lengths: c.beat_lengths.bytes.len(),
            peak_offsets: c.peak_offsets.bytes.len(),
        },
        encode_ms,
        decode_ms,
        output: job.output.display().to_string(),
    };
    Ok((report, encoded.bytes))
}

/// Claims jobs off a shared counter until the list is drained or a worker
/// fails; the first failure wins and later results are discarded.
fn run_pool<T: Send>(
    jobs: &[Job],
    workers: usize,
    work: impl Fn(&Job) -> Result<T> + Sync,
) -> Result<Vec<T>> {
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<T>>> = Mutex::new((0..jobs.len()).map(|_| None).collect());
    let failed: Mutex<Option<ToolError>> = Mutex::new(None);
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                if failed.lock().unwrap().is_some() {
                    return;
                }
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= jobs.len() {
                    return;
                }
                match work(&jobs[i]) {
                    Ok(v) => slots.lock().unwrap()[i] = Some(v),
                    Err(e) => {
                        let mut slot = failed.lock().unwrap();
                        if slot.is_none() {
                            *slot = Some(e);
                        }
                        return;
                    }
                }
            });
        }
    });
    if let Some(e) = failed.into_inner().unwrap() {
        return Err(e);
    }
    Ok(slots
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|slot| slot.expect("every job ran"))
        .collect())
}

fn compress(args: CompressArgs, file: &FileConfig) -> Result<()> {
    let target = args
        .target_prdn
        .or(file.target_prdn)
        .ok_or_else(|| ToolError::Validation("--target-prdn is required".into()))?;
    if !target.is_finite() || target <= 0.0 || target >= 100.0 {
        return Err(ToolError::Validation(format!(
            "target PRDN must lie strictly between 0 and 100, got {target}"
        )));
    }
    let format_name = config::pick(args.format.clone(), file.format.clone(), "csv".into());
    let format = parse_format(&format_name)?;
    let family_name = config::pick(args.dictionary.clone(), file.dictionary.clone(), "cdf97".into());
    let family = parse_family(&family_name)?;
    let level = config::pick(args.level, file.level, 4);
    let fs = config::pick(args.fs, file.fs, 250.0);
    if !fs.is_finite() || fs <= 0.0 {
        return Err(ToolError::Validation(format!("sampling rate must be positive, got {fs}")));
    }
    let max_atoms = args.max_atoms.or(file.max_atoms);
    if max_atoms == Some(0) {
        return Err(ToolError::Validation("the atom budget must be positive".into()));
    }
    let channel = config::pick(args.channel, file.channel, 0);
    let default_jobs = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
    let jobs_wanted = config::pick(args.jobs, file.jobs, default_jobs);
    if jobs_wanted == 0 {
        return Err(ToolError::Validation("--jobs must be positive".into()));
    }

    if args.input.is_some() && !args.records.is_empty() {
        return Err(ToolError::Validation(
            "choose either --input or --records, not both".into(),
        ));
    }
    if args.peaks.is_some() && !args.records.is_empty() {
        return Err(ToolError::Validation(
            "--peaks applies to a single --input record".into(),
        ));
    }

    let mut jobs = Vec::new();
    let report_path;
    if let Some(input) = &args.input {
        let id = input
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "record".into());
        let output = args.out.clone().unwrap_or_else(|| input.with_extension("secg"));
        report_path = args.report.clone().unwrap_or_else(|| output.with_extension("json"));
        jobs.push(Job { id, input: input.clone(), output });
    } else if !args.records.is_empty() {
        let data_dir = args
            .data_dir
            .clone()
            .or_else(|| file.data_dir.clone())
            .ok_or_else(|| ToolError::Validation("--records needs --data-dir".into()))?;
        let out_dir = args
            .out_dir
            .clone()
            .or_else(|| file.out_dir.clone())
            .unwrap_or_else(|| PathBuf::from("."));
        let mut ids = args.records.clone();
        ids.sort();
        ids.dedup();
        for id in ids {
            let input = match format {
                Format::MitBih212 => mitbih::record_path(&data_dir, &id),
                Format::Csv => data_dir.join(format!("{id}.csv")),
            };
            let output = out_dir.join(format!("{id}.secg"));
            jobs.push(Job { id, input, output });
        }
        report_path = args.report.clone().unwrap_or_else(|| out_dir.join("report.json"));
    } else {
        return Err(ToolError::Validation(
            "an input is required: --input FILE or --records IDS".into(),
        ));
    }

    let peaks = args.peaks.as_deref().map(csvio::read_peaks).transpose()?;
    let settings = EncodeSettings {
        target,
        fs,
        format,
        channel,
        dictionary: DictionarySpec { family, level },
        max_atoms,
    };

    let workers = jobs_wanted.min(jobs.len()).max(1);
    let results = run_pool(&jobs, workers, |job| encode_one(job, &settings, peaks.as_deref()))?;

    for (job, (_, bytes)) in jobs.iter().zip(&results) {
        if let Some(parent) = job.output.parent() {
            if !parent.as_os_str().is_empty() {
                fs::create_dir_all(parent).map_err(|e| ToolError::io(parent, e))?;
            }
        }
        fs::write(&job.output, bytes).map_err(|e| ToolError::io(&job.output, e))?;
    }

    let report = CompressReport {
        config: CompressConfig {
            target_prdn: target,
            fs,
            format: format_name,
            dictionary: family_name,
            level,
            max_atoms,
            channel,
            jobs: workers,
        },
        records: results.iter().map(|(r, _)| r.clone()).collect(),
    };
    let json = serde_json::to_string_pretty(&report).expect("report serializes");
    if let Some(parent) = report_path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent).map_err(|e| ToolError::io(parent, e))?;
        }
    }
    fs::write(&report_path, json).map_err(|e| ToolError::io(&report_path, e))?;

    let rows: Vec<Vec<String>> = report
        .records
        .iter()
        .map(|r| {
            vec![
                r.record.clone(),
                r.samples.to_string(),
                r.beats.to_string(),
                r.atoms.to_string(),
                format!("{:.2}", r.achieved_prdn),
                format!("{:.2}", r.compression_ratio),
                r.container_bytes.to_string(),
                format!("{:.1}", r.encode_ms),
            ]
        })
        .collect();
    print!(
        "{}",
        aligned_table(
            &["record", "samples", "beats", "atoms", "prdn", "cr", "bytes", "encode_ms"],
            &rows
        )
    );
    println!("report: {}", report_path.display());
    Ok(())
}

/// Lexical path identity; good enough to catch the honest footgun of
/// pointing --out at the reference.
fn same_file(a: &PathBuf, b: &PathBuf) -> bool {
    let resolve = |p: &PathBuf| std::path::absolute(p).unwrap_or_else(|_| p.clone());
    resolve(a) == resolve(b)
}

#[derive(Debug, Args)]
pub struct DecompressArgs {
    /// The .secg container to reconstruct.
    #[arg(long, value_name = "FILE")]
    pub input: PathBuf,

    /// Output CSV path. Defaults to the input with a .csv extension.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,

    /// Original record as CSV; enables the distortion section.
    #[arg(long, value_name = "FILE")]
    pub reference: Option<PathBuf>,

    /// Optional JSON report path.
    #[arg(long, value_name = "FILE")]
    pub report: Option<PathBuf>,
}

fn decompress(args: DecompressArgs, _file: &FileConfig) -> Result<()> {
    let bytes = fs::read(&args.input).map_err(|e| ToolError::io(&args.input, e))?;
    let decoded = codec::decode_record(&bytes).map_err(|e| ToolError::corrupt(&args.input, e))?;

    let out = args.out.clone().unwrap_or_else(|| args.input.with_extension("decoded.csv"));
    if let Some(ref_path) = &args.reference {
        if same_file(ref_path, &out) {
            return Err(ToolError::Validation(format!(
                "output {} would overwrite the reference",
                out.display()
            )));
        }
    }

    // The reference is read before anything is written so a careless
    // output path cannot silently clobber it first.
    let mut prdn_vs_reference = None;
    if let Some(ref_path) = &args.reference {
        let reference = csvio::read_samples(ref_path)?;
        if reference.len() != decoded.samples.len() {
            return Err(ToolError::Validation(format!(
                "reference has {} samples but the container decodes to {}",
                reference.len(),
                decoded.samples.len()
            )));
        }
        let p = soomp::metrics::prdn(&reference, &decoded.samples)
            .map_err(|e| ToolError::pipeline("metrics", e))?;
        prdn_vs_reference = Some(p);
    }

    csvio::write_samples(&out, &decoded.samples)?;

    println!("samples      {}", decoded.samples.len());
    println!("beats        {}", decoded.beat_count);
    println!("atoms        {}", decoded.selected_atoms);
    println!("sample_rate  {}", decoded.sample_rate);
    println!("output       {}", out.display());
    if let Some(p) = prdn_vs_reference {
        println!("PRDN vs reference: {p:.2}");
    }

    if let Some(report_path) = &args.report {
        let report = DecompressReport {
            config: DecompressConfig {
                input: args.input.display().to_string(),
                output: out.display().to_string(),
                reference: args.reference.as_ref().map(|p| p.display().to_string()),
            },
            samples: decoded.samples.len(),
            beats: decoded.beat_count,
            atoms: decoded.selected_atoms,
            sample_rate: decoded.sample_rate,
            prdn_vs_reference,
        };
        let json = serde_json::to_string_pretty(&report).expect("report serializes");
        fs::write(report_path, json).map_err(|e| ToolError::io(report_path, e))?;
    }
    Ok(())
}

#[derive(Debug, Args)]
pub struct AudioBenchArgs {
    /// Stereo 16-bit PCM WAV input.
    #[arg(long, value_name = "FILE")]
    pub input: Option<PathBuf>,

    /// Generate a synthetic similar-channel stereo pair instead.
    #[arg(long)]
    pub synthetic: bool,

    /// Synthetic signal length in samples.
    #[arg(long)]
    pub samples: Option<usize>,

    /// Seed for the synthetic generator.
    #[arg(long)]
    pub seed: Option<u64>,

    /// Comma-separated target SNR values in dB.
    #[arg(long, value_name = "DB", value_delimiter = ',')]
    pub snr0: Vec<f64>,

    /// Frame length in samples.
    #[arg(long, value_name = "L")]
    pub frame_len: Option<usize>,

    /// Timed repetitions per method and SNR value.
    #[arg(long)]
    pub repeats: Option<usize>,

    /// Optional JSON report path.
    #[arg(long, value_name = "FILE")]
    pub report: Option<PathBuf>,

    /// Optional CSV path for the table rows.
    #[arg(long, value_name = "FILE")]
    pub csv: Option<PathBuf>,
}

fn audio_bench(args: AudioBenchArgs, file: &FileConfig) -> Result<()> {
    let frame_len = config::pick(args.frame_len, file.frame_len, 1024);
    if frame_len == 0 {
        return Err(ToolError::Validation("--frame-len must be positive".into()));
    }
    let repeats = config::pick(args.repeats, file.repeats, 5);
    if repeats == 0 {
        return Err(ToolError::Validation("--repeats must be positive".into()));
    }
    let snr0_list = if !args.snr0.is_empty() {
        args.snr0.clone()
    } else {
        file.snr0.clone().unwrap_or_else(|| vec![20.0, 25.0, 30.0])
    };
    let seed = config::pick(args.seed, file.seed, 7);
    let sample_count = config::pick(args.samples, file.samples, 32 * 1024);

    let (left, right, source) = match (&args.input, args.synthetic) {
        (Some(_), true) => {
            return Err(ToolError::Validation(
                "choose either --input or --synthetic, not both".into(),
            ));
        }
        (Some(path), false) => {
            let wav = wav::read_stereo(path)?;
            (wav.left, wav.right, path.display().to_string())
        }
        (None, true) => {
            if sample_count < frame_len {
                return Err(ToolError::Validation(format!(
                    "--samples {sample_count} is shorter than one {frame_len}-sample frame"
                )));
            }
            let (l, r) = synth::stereo_similar(sample_count, seed);
            (l, r, format!("synthetic(seed {seed})"))
        }
        (None, false) => {
            return Err(ToolError::Validation(
                "an input is required: --input FILE or --synthetic".into(),
            ));
        }
    };

    let run_method = |snr0_db: f64, method: Method| -> Result<(StereoApproximation, f64, f64)> {
        let mut outcome = None;
        let ((), mean, std) = bench::time_runs(repeats, || {
            outcome = Some(audio::approximate_stereo(&left, &right, frame_len, snr0_db, method));
        });
        match outcome.expect("at least one run") {
            Ok(approx) => Ok((approx, mean, std)),
            Err(e) => Err(ToolError::pipeline("audio", e)),
        }
    };

    let mut groups = Vec::new();
    let mut rows = Vec::new();
    for &snr0_db in &snr0_list {
        let (soomp_run, soomp_mean, soomp_std) = run_method(snr0_db, Method::Soomp)?;
        let (somp_run, somp_mean, somp_std) = run_method(snr0_db, Method::Somp)?;
        let gain = audio::sparsity_gain(soomp_run.sparsity_ratio, somp_run.sparsity_ratio);

        let soomp_row = AudioRow {
            snr0_db,
            method: "soomp".into(),
            sparsity_ratio: soomp_run.sparsity_ratio,
            snr_db: soomp_run.snr_db,
            total_atoms: soomp_run.total_atoms,
            time_mean_s: soomp_mean,
            time_std_s: soomp_std,
        };
        let somp_row = AudioRow {
            snr0_db,
            method: "somp".into(),
            sparsity_ratio: somp_run.sparsity_ratio,
            snr_db: somp_run.snr_db,
            total_atoms: somp_run.total_atoms,
            time_mean_s: somp_mean,
            time_std_s: somp_std,
        };
        for (row, gain_cell) in [(&soomp_row, format!("{gain:.1}")), (&somp_row, "-".into())] {
            rows.push(vec![
                format!("{}", row.snr0_db),
                row.method.clone(),
                format!("{:.2}", row.sparsity_ratio),
                format!("{:.2}", row.snr_db),
                row.total_atoms.to_string(),
                format!("{:.4}", row.time_mean_s),
                format!("{:.4}", row.time_std_s),
                gain_cell,
            ]);
        }
        groups.push(AudioGroup { snr0_db, soomp: soomp_row, somp: somp_row, gain_percent: gain });
    }

    let header = ["snr0_db", "method", "sr", "snr_db", "atoms", "time_s", "std_s", "gain_%"];
    print!("{}", aligned_table(&header, &rows));

    if let Some(csv_path) = &args.csv {
        let mut text = header.join(",");
        text.push('\n');
        for row in &rows {
            text.push_str(&row.join(","));
            text.push('\n');
        }
        fs::write(csv_path, text).map_err(|e| ToolError::io(csv_path, e))?;
    }
    if let Some(report_path) = &args.report {
        let report = AudioReport {
            config: AudioConfig {
                input: source,
                frame_len,
                snr0_db: snr0_list,
                repeats,
                seed,
                samples: left.len(),
            },
            groups,
        };
        let json = serde_json::to_string_pretty(&report).expect("report serializes");
        fs::write(report_path, json).map_err(|e| ToolError::io(report_path, e))?;
    }
    Ok(())
}

#[derive(Debug, Args)]
pub struct PursuitDemoArgs {
    /// Signal length N.
    #[arg(long)]
    pub ambient: Option<usize>,

    /// Dictionary size M.
    #[arg(long)]
    pub atoms: Option<usize>,

    /// Number of simultaneous signals Q.
    #[arg(long)]
    pub signals: Option<usize>,

    /// Pursuit steps to trace.
    #[arg(long)]
    pub iterations: Option<usize>,

    /// Seed for the random instance.
    #[arg(long)]
    pub seed: Option<u64>,
}

fn gram_deviation(pursuit: &Pursuit, dict: &Dictionary) -> f64 {
    let selected = pursuit.selected();
    let mut worst = 0.0f64;
    for i in 0..selected.len() {
        let dual = pursuit.dual(i);
        for (j, &atom_index) in selected.iter().enumerate() {
            let atom = dict.atom(atom_index);
            let dot: f64 = dual.iter().zip(atom).map(|(a, b)| a * b).sum();
            let expected = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((dot - expected).abs());
        }
    }
    worst
}

fn pursuit_demo(args: PursuitDemoArgs, file: &FileConfig) -> Result<()> {
    let ambient = config::pick(args.ambient, file.ambient, 16);
    let atoms = config::pick(args.atoms, file.atoms, 32);
    let signals = config::pick(args.signals, file.signals, 2);
    let iterations = config::pick(args.iterations, file.iterations, 6);
    let seed = config::pick(args.seed, file.seed, 1);
    for (name, value) in [
        ("--ambient", ambient),
        ("--atoms", atoms),
        ("--signals", signals),
        ("--iterations", iterations),
    ] {
        if value == 0 {
            return Err(ToolError::Validation(format!("{name} must be positive")));
        }
    }

    let (atom_rows, signal_rows) = synth::random_instance(ambient, atoms, signals, seed);
    let dict = Dictionary::from_atoms(atom_rows).map_err(|e| ToolError::pipeline("dictionary", e))?;
    let set = SignalSet::new(signal_rows, None).map_err(|e| ToolError::pipeline("signals", e))?;
    let mut pursuit = Pursuit::new(&dict, &set).map_err(|e| ToolError::pipeline("pursuit", e))?;

    println!("instance: N={ambient} M={atoms} Q={signals} seed={seed}");
    let steps = iterations.min(pursuit.safety_cap());
    let mut rows = Vec::with_capacity(steps);
    for iter in 1..=steps {
        let (index, criterion) = pursuit.peek().map_err(|e| ToolError::pipeline("pursuit", e))?;
        pursuit.step().map_err(|e| ToolError::pipeline("pursuit", e))?;
        let mse = pursuit.weighted_residual_sq() / ambient as f64;
        let deviation = gram_deviation(&pursuit, &dict);
        rows.push(vec![
            iter.to_string(),
            index.to_string(),
            format!("{criterion:.6e}"),
            format!("{mse:.6e}"),
            format!("{deviation:.2e}"),
        ]);
    }
    print!(
        "{}",
        aligned_table(&["iter", "atom", "criterion", "weighted_mse", "gram_dev"], &rows)
    );
    Ok(())
}

