// Command-line driver for the swapping experiments.
//
// Exit codes: 0 success, 1 configuration error, 2 schedule validation error,
// 3 integration failure.
#include <eswap/experiment.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

int run(int argc, char** argv) {
  CLI::App app{"Pulse-level entanglement swapping simulator"};
  std::string config, mode = "normal", sampling = "exact", format = "table", out, fidelity = "full";
  std::string dump_dir, counts_out;
  long shots = 0;
  std::uint64_t seed = 1;
  int cutoff = 0;
  bool characterize = false, gate_fidelity = false, no_readout_error = false, ideal_rotations = false;

  app.add_option("--config", config, "device config JSON (built-in defaults when omitted)");
  app.add_option("--mode", mode, "normal | delayed-bell | delayed-computational")
      ->check(CLI::IsMember({"normal", "delayed-bell", "delayed-computational"}));
  app.add_option("--sampling", sampling, "exact | shots")->check(CLI::IsMember({"exact", "shots"}));
  app.add_option("--shots", shots, "shots per tomography setting");
  app.add_option("--seed", seed, "sampler seed");
  app.add_option("--format", format, "table | json | csv")->check(CLI::IsMember({"table", "json", "csv"}));
  app.add_option("--out", out, "report destination (stdout when omitted)");
  app.add_option("--fidelity-mode", fidelity, "full | effective")->check(CLI::IsMember({"full", "effective"}));
  app.add_option("--cutoff", cutoff, "resonator Fock cutoff");
  app.add_flag("--characterize", characterize, "Bell-preparation and gate characterization only");
  app.add_flag("--gate-fidelity", gate_fidelity, "include the gate process fidelity in the report");
  app.add_option("--dump-dir", dump_dir, "write <mode>_<anchor>.json density matrices here");
  app.add_option("--counts-out", counts_out, "write shot counts as CSV (shot sampling only)");
  app.add_flag("--no-readout-error", no_readout_error, "perfect readout");
  app.add_flag("--ideal-rotations", ideal_rotations, "instantaneous pi pulses instead of Gaussian drives");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  eswap::DeviceConfig cfg;
  try {
    cfg = config.empty() ? eswap::default_device() : eswap::load_device(config);
    if (cutoff != 0) {
      cfg.resonator_cutoff = cutoff;
      cfg.validate();
    }
    if (sampling == "shots" && shots <= 0) throw eswap::ConfigError("--sampling shots needs --shots N with N > 0");
  } catch (const eswap::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  }

  eswap::ExperimentOptions opt;
  opt.mode = eswap::parse_mode(mode);
  opt.fidelity = fidelity == "full" ? eswap::FidelityMode::full : eswap::FidelityMode::effective;
  opt.sampling = {sampling == "shots", shots, seed};
  opt.readout_error = !no_readout_error;
  opt.gate_fidelity = gate_fidelity;
  opt.sequence.ideal_rotations = ideal_rotations;
  const auto fmt = eswap::parse_format(format);

  try {
    if (characterize) {
      const auto r = eswap::run_characterization(cfg, opt.sequence, opt.integrator);
      std::ofstream file;
      if (!out.empty()) {
        file.open(out);
        if (!file) throw std::runtime_error("cannot write '" + out + "'");
      }
      std::ostream& os = out.empty() ? std::cout : file;
      if (fmt == eswap::ReportFormat::json) {
        os << eswap::characterization_to_json(r).dump(2) << '\n';
      } else {
        os << "F12 " << r.prep.f12 << "\nF34 " << r.prep.f34 << "\njoint " << r.prep.joint << '\n';
        const char* labels[] = {"0101", "0110", "1001", "1010"};
        for (int i = 0; i < 4; ++i) os << "population " << labels[i] << ' ' << r.prep.populations[i] << '\n';
        os << "gate process fidelity " << r.gate_fidelity << '\n';
      }
      return 0;
    }
    const auto rep = eswap::run_experiment(cfg, opt);
    for (const auto& w : rep.warnings) std::cerr << "warning: " << w << '\n';
    eswap::emit_report(rep, fmt, out);
    if (!dump_dir.empty()) eswap::write_anchor_dumps(rep, dump_dir);
    if (!counts_out.empty()) {
      if (!opt.sampling.shots) throw std::runtime_error("--counts-out requires --sampling shots");
      std::ofstream f(counts_out);
      if (!f) throw std::runtime_error("cannot write '" + counts_out + "'");
      eswap::write_counts_csv(f, rep.counts);
    }
  } catch (const eswap::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const eswap::ScheduleError& e) {
    std::cerr << "schedule error: " << e.what() << '\n';
    return 2;
  } catch (const eswap::IntegrationError& e) {
    std::cerr << "integration failure: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
