#include "iafc/run.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>

#include "iafc/errors.hpp"
#include "iafc/kernels.hpp"
#include "iafc/sweep.hpp"

namespace iafc {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string fmt_g(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string hash_hex(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

// Exclusive advisory lock on the output directory; refuses to share.
class DirLock {
public:
    explicit DirLock(const fs::path& dir) : path_(dir / ".lock") {
        fd_ = ::open(path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
        if (fd_ < 0)
            throw ConfigError("output directory '" + dir.string() +
                              "' is locked by another run (remove " + path_.string() +
                              " if that run is gone)");
    }
    ~DirLock() {
        if (fd_ >= 0) {
            ::close(fd_);
            ::unlink(path_.c_str());
        }
    }
    DirLock(const DirLock&) = delete;
    DirLock& operator=(const DirLock&) = delete;

private:
    fs::path path_;
    int fd_ = -1;
};

struct OutputSet {
    fs::path dir;
    std::string hash;
    std::vector<fs::path> written;

    std::ofstream open(const std::string& name) {
        const fs::path p = dir / name;
        std::ofstream out(p);
        if (!out) throw ConfigError("cannot write '" + p.string() + "'");
        written.push_back(p);
        out << "# config_hash: " << hash << "\n";
        return out;
    }

    void write_json(const std::string& name, const json& doc) {
        const fs::path p = dir / name;
        std::ofstream out(p);
        if (!out) throw ConfigError("cannot write '" + p.string() + "'");
        written.push_back(p);
        out << doc.dump(2) << "\n";
    }

    void discard_all() {
        for (const fs::path& p : written) {
            std::error_code ec;
            fs::remove(p, ec);
        }
    }
};

struct ResolvedContext {
    SimContext ctx;
    bool pulse_auto = false;
    const AtomSpec* atom = nullptr;
};

ResolvedContext resolve_context(const RunConfig& cfg, const RunOptions& opts,
                                const AtomDatabase* db) {
    ResolvedContext rc;

    if (cfg.ideal) {
        IdealCombSpec s;
        s.teeth = cfg.ideal->teeth;
        s.spacing = cfg.ideal->spacing.value;
        s.tooth_width = cfg.ideal->tooth_width.value;
        s.g_eff = cfg.ideal->g_eff.value;
        rc.ctx.comb = s;
    } else {
        if (!db) throw std::logic_error("atomic comb without a database");
        rc.atom = &db->find(cfg.atomic->atom);
        AtomicCombSpec s;
        s.atom = rc.atom;
        s.b_field = cfg.atomic->field.value;
        s.q = cfg.atomic->polarization == "sigma+"  ? +1
              : cfg.atomic->polarization == "pi"    ? 0
                                                    : -1;
        if (cfg.atomic->carrier_offset)
            s.carrier = rc.atom->omega0() + cfg.atomic->carrier_offset->value;
        rc.ctx.comb = s;
    }

    rc.ctx.cavity.kappa = cfg.cavity.kappa.value;
    rc.ctx.cavity.delta_c = cfg.cavity.detuning ? cfg.cavity.detuning->value : 0.0;
    if (cfg.atomic) {
        if (!cfg.cavity.mode_volume)
            throw ConfigError("cavity.mode_volume is required for atomic combs");
        rc.ctx.cavity.mode_volume = cfg.cavity.mode_volume->value;
        rc.ctx.cavity.omega_c = rc.atom->omega0();
        if (cfg.cavity.wavelength)
            throw ConfigError(
                "cavity.wavelength conflicts with an atomic comb (the transition fixes it)");
    } else {
        rc.ctx.cavity.mode_volume =
            cfg.cavity.mode_volume ? cfg.cavity.mode_volume->value : 0.0;
        const double lambda =
            cfg.cavity.wavelength ? cfg.cavity.wavelength->value : 420.3e-9;
        rc.ctx.cavity.omega_c = phys::two_pi * phys::c_light / lambda;
    }
    rc.ctx.cavity.validate();

    rc.ctx.pulse.center = cfg.pulse.center ? cfg.pulse.center->value : 2e-9;
    if (cfg.pulse.spectral_width) {
        rc.ctx.pulse.spectral_width = cfg.pulse.spectral_width->value;
        if (!(rc.ctx.pulse.spectral_width > 0.0))
            throw ConfigError("pulse.spectral_width must be positive");
    } else {
        rc.pulse_auto = true;
    }

    if (cfg.grid.samples_cap) rc.ctx.budget.sample_cap = *cfg.grid.samples_cap;
    if (cfg.grid.periods) rc.ctx.budget.periods = *cfg.grid.periods;
    if (cfg.grid.tail_gammas) rc.ctx.budget.tail_gammas = *cfg.grid.tail_gammas;
    if (opts.samples_cap) rc.ctx.budget.sample_cap = *opts.samples_cap;

    return rc;
}

void write_comb_table(OutputSet& out, const FrequencyComb& comb) {
    std::ofstream f = out.open("comb.tsv");
    f << "# columns: detuning_Hz\tg_Hz\tsigma\n";
    for (const CombTooth& t : comb.teeth)
        f << fmt_g(t.detuning / phys::two_pi) << "\t" << fmt_g(t.coupling / phys::two_pi)
          << "\t" << fmt_g(t.population) << "\n";
}

void write_waveform(OutputSet& out, const std::string& name, const Waveform& w) {
    std::ofstream f = out.open(name);
    f << "# columns: t_s\tre\tim\tintensity\n";
    const std::vector<double> inten = intensity(w);
    for (std::size_t i = 0; i < w.samples.size(); ++i)
        f << fmt_g(w.grid.time_at(i)) << "\t" << fmt_g(w.samples[i].real()) << "\t"
          << fmt_g(w.samples[i].imag()) << "\t" << fmt_g(inten[i]) << "\n";
}

json comb_summary(const FrequencyComb& comb, const CavityParams& cav) {
    json j;
    j["teeth"] = comb.teeth.size();
    j["gamma_Hz"] = comb.gamma / phys::two_pi;
    j["coupling_power_Hz2"] = comb.coupling_power() / (phys::two_pi * phys::two_pi);
    j["delta_eff_Hz"] = effective_spacing(comb) / phys::two_pi;
    try {
        j["finesse"] = finesse(comb);
    } catch (const std::invalid_argument&) {
        j["finesse"] = nullptr;
    }
    j["purcell_regime"] = purcell_regime(comb, cav);
    j["label"] = comb.label;
    return j;
}

json echo_report(const SimRun& run, const SimContext& ctx, bool pulse_auto) {
    const EchoOutcome& o = run.outcome;
    json j;
    j["efficiency"] = o.eta;
    if (o.echo_delay)
        j["echo_delay_ns"] = *o.echo_delay * 1e9;
    else
        j["echo_delay_ns"] = nullptr;
    j["window_ns"] = {o.window.t1 * 1e9, o.window.t2 * 1e9};
    j["input_energy"] = o.input_energy;
    j["window_energy"] = o.window_energy;
    j["output_energy"] = o.output_energy;
    j["delta_eff_Hz"] = o.delta_eff / phys::two_pi;
    j["purcell_regime"] = o.purcell;
    j["pulse"] = {{"center_ns", o.t0 * 1e9},
                  {"spectral_width_Hz", ctx.pulse.spectral_width / phys::two_pi},
                  {"width_optimized", pulse_auto}};
    j["grid"] = {{"samples", o.grid.samples}, {"span_ns", o.grid.span * 1e9}};
    return j;
}

std::string timestamp_utc() {
    char buf[32];
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_manifest(OutputSet& out, const RunConfig& cfg, const RunOptions& opts,
                    const json& extra) {
    json m;
    m["tool"] = "iafc";
    m["version"] = kVersion;
    m["mode"] = cfg.mode;
    m["config_hash"] = out.hash;
    m["kernels"] = kernels::active().name;
    m["workers"] = opts.workers;
    m["timestamp"] = timestamp_utc();  // the only timestamp in any output
    m["config"] = cfg.raw;
    for (const auto& [k, v] : extra.items()) m[k] = v;
    json files = json::array();
    for (const fs::path& p : out.written) files.push_back(p.filename().string());
    files.push_back("manifest.json");
    m["outputs"] = files;
    out.write_json("manifest.json", m);
}

double sweep_value_out(SweepTarget t, double v) {
    switch (t) {
        case SweepTarget::BField:
        case SweepTarget::Finesse:
            return v;
        default:
            return v / phys::two_pi;
    }
}

const char* sweep_unit(SweepTarget t) {
    switch (t) {
        case SweepTarget::BField:
            return "T";
        case SweepTarget::Finesse:
            return "1";
        default:
            return "Hz";
    }
}

}  // namespace

void run(const RunConfig& cfg, const RunOptions& opts) {
    if (cfg.mode.empty())
        throw ConfigError("no mode selected (comb, echo, absorption, sweep, optimize)");

    std::optional<AtomDatabase> db;
    if (cfg.atomic) {
        db = opts.atomic_data_path.empty() ? AtomDatabase::load_default()
                                           : AtomDatabase::load(opts.atomic_data_path);
    }

    const fs::path out_dir =
        opts.output_override.empty() ? fs::path(cfg.output) : fs::path(opts.output_override);
    fs::create_directories(out_dir);
    DirLock lock(out_dir);

    OutputSet out;
    out.dir = out_dir;
    out.hash = hash_hex(config_hash(cfg));

    ResolvedContext rc = resolve_context(cfg, opts, db ? &*db : nullptr);

    try {
        if (cfg.mode == "comb") {
            const FrequencyComb comb = realize_comb(rc.ctx);
            comb.validate();
            write_comb_table(out, comb);
            write_manifest(out, cfg, opts, {{"comb", comb_summary(comb, rc.ctx.cavity)}});

        } else if (cfg.mode == "echo") {
            bool optimized = false;
            if (rc.pulse_auto) {
                const PulseOptimum opt = optimize_pulse_width(rc.ctx);
                rc.ctx.pulse.spectral_width = opt.spectral_width;
                optimized = true;
            }
            const SimRun sim = simulate(rc.ctx);
            write_comb_table(out, sim.comb);
            write_waveform(out, "waveform_in.tsv", sim.input.wave);
            write_waveform(out, "waveform_out.tsv", sim.output);
            out.write_json("echo_report.json", [&] {
                json j = echo_report(sim, rc.ctx, optimized);
                j["config_hash"] = out.hash;
                j["comb"] = comb_summary(sim.comb, rc.ctx.cavity);
                return j;
            }());
            write_manifest(out, cfg, opts, json::object());

        } else if (cfg.mode == "absorption") {
            const FrequencyComb comb = realize_comb(rc.ctx);
            comb.validate();
            const AbsorptionConfig ac = cfg.absorption.value_or(AbsorptionConfig{});
            if (ac.points < 2) throw ConfigError("absorption.points must be >= 2");
            const double width = ac.span
                                     ? ac.span->value
                                     : 2.4 * (comb.max_abs_detuning() + 5.0 * comb.gamma);
            std::vector<double> omega(std::size_t(ac.points));
            for (int i = 0; i < ac.points; ++i)
                omega[std::size_t(i)] =
                    -0.5 * width + width * double(i) / double(ac.points - 1);
            const ResponseSpectrum spec =
                absorption_spectrum(comb, rc.ctx.cavity, omega);
            std::ofstream f = out.open("spectrum.tsv");
            f << "# columns: omega_Hz_offset\tvalue\n";
            for (std::size_t i = 0; i < spec.omega.size(); ++i)
                f << fmt_g(spec.omega[i] / phys::two_pi) << "\t"
                  << fmt_g(spec.values[i].imag()) << "\n";
            f.close();
            write_comb_table(out, comb);
            write_manifest(out, cfg, opts, {{"comb", comb_summary(comb, rc.ctx.cavity)}});

        } else if (cfg.mode == "sweep") {
            if (!cfg.sweep) throw ConfigError("mode 'sweep' needs a sweep section");
            SweepSpec spec;
            spec.target = sweep_target_from_string(cfg.sweep->parameter);
            spec.min = cfg.sweep->min.value;
            spec.max = cfg.sweep->max.value;
            spec.points = cfg.sweep->points;
            spec.log_scale = cfg.sweep->log_scale;
            spec.optimize_pulse = cfg.sweep->optimize_pulse;
            spec.context = rc.ctx;
            spec.workers = opts.workers;
            if (!spec.optimize_pulse && rc.pulse_auto &&
                spec.target != SweepTarget::PulseWidth)
                throw ConfigError(
                    "pulse.spectral_width is required when sweep.optimize_pulse is false");
            const SweepResult res = run_sweep(spec);

            std::ofstream f = out.open("sweep.tsv");
            f << "# sweep parameter: " << to_string(spec.target) << " ["
              << sweep_unit(spec.target) << "]\n";
            f << "# context: " << cfg.raw["comb"].dump() << " " << cfg.raw["cavity"].dump()
              << "\n";
            f << "# columns: value\teta\tpulse_width_Hz\tstatus\n";
            for (const SweepPoint& p : res.points) {
                f << fmt_g(sweep_value_out(spec.target, p.value)) << "\t" << fmt_g(p.eta)
                  << "\t" << fmt_g(p.pulse_width / phys::two_pi) << "\t"
                  << (p.ok ? "ok" : "failed") << "\n";
            }
            f.close();
            json extra;
            extra["argmax_index"] = res.argmax;
            if (res.argmax >= 0) {
                const SweepPoint& b = res.points[std::size_t(res.argmax)];
                extra["best"] = {{"value", sweep_value_out(spec.target, b.value)},
                                 {"eta", b.eta},
                                 {"pulse_width_Hz", b.pulse_width / phys::two_pi}};
            }
            write_manifest(out, cfg, opts, {{"sweep", extra}});

        } else if (cfg.mode == "optimize") {
            if (!cfg.optimize) throw ConfigError("mode 'optimize' needs an optimize section");
            const Optimum2d best = optimize_2d(
                cfg.optimize->g_min.value, cfg.optimize->g_max.value,
                cfg.optimize->k_min.value, cfg.optimize->k_max.value, rc.ctx,
                cfg.optimize->coarse_points, cfg.optimize->refine_levels, opts.workers);
            json j;
            j["config_hash"] = out.hash;
            j["g_eff_Hz"] = best.g_eff / phys::two_pi;
            j["kappa_Hz"] = best.kappa / phys::two_pi;
            j["eta"] = best.eta;
            j["pulse_width_Hz"] = best.pulse_width / phys::two_pi;
            j["on_boundary"] = best.on_boundary;
            out.write_json("optimize.json", j);
            write_manifest(out, cfg, opts, {{"optimum", j}});

        } else {
            throw ConfigError("unknown mode '" + cfg.mode + "'");
        }
    } catch (...) {
        out.discard_all();
        throw;
    }
}

}  // namespace iafc
