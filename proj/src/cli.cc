// Copyright 2026 The hmojpeg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "hmojpeg/cli.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "hmojpeg/error.h"
#include "hmojpeg/hmosdq.h"
#include "hmojpeg/image_io.h"
#include "hmojpeg/manifest.h"
#include "hmojpeg/metrics.h"
#include "hmojpeg/parallel.h"

namespace hmojpeg {

namespace {

namespace fs = std::filesystem;

struct CodingFlags {
  double lambda = 0.0;
  double beta = 1.0;
  int quality = 75;
  std::string sensitivity;
  int radius = 1;
  int max_iters = 20;
  double epsilon = 1e-4;
  std::string subsample = "444";
  bool no_asm = false;
  std::string manifest;
};

void AddCodingFlags(CLI::App* cmd, CodingFlags* f) {
  cmd->add_option("--lambda", f->lambda, "Machine-error weight (0 = plain SDQ)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--quality", f->quality, "Quality of the initial Annex K tables")
      ->check(CLI::Range(1, 100));
  cmd->add_option("--sensitivity", f->sensitivity, "Sensitivity table (JSON)");
  cmd->add_option("--radius", f->radius, "Amplitude candidate radius")->check(CLI::PositiveNumber);
  cmd->add_option("--max-iters", f->max_iters, "Iteration cap")->check(CLI::PositiveNumber);
  cmd->add_option("--epsilon", f->epsilon, "Relative cost decrease that stops iterating")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--subsample", f->subsample, "Chroma subsampling")
      ->check(CLI::IsMember({"444", "420"}));
  cmd->add_flag("--no-asm", f->no_asm,
                "Use the sensitivity table as is, whatever the image size");
  cmd->add_option("--manifest", f->manifest, "CSV manifest to create or append to");
}

Subsampling ParseSubsampling(const std::string& s) {
  return s == "420" ? Subsampling::k420 : Subsampling::k444;
}

struct Loaded {
  SensitivityTable table = SensitivityTable::Zero(8);
  bool present = false;
};

Loaded LoadTableFor(const CodingFlags& f) {
  Loaded l;
  if (!f.sensitivity.empty()) {
    l.table = LoadSensitivity(f.sensitivity);
    l.present = true;
  } else if (f.lambda > 0.0) {
    throw InvalidArgument("--lambda > 0 needs --sensitivity");
  }
  return l;
}

CompressOptions OptionsFor(const CodingFlags& f, double beta, int threads) {
  CompressOptions o;
  o.optimizer.beta = beta;
  o.optimizer.lambda = f.lambda;
  o.optimizer.quality = f.quality;
  o.optimizer.radius = f.radius;
  o.optimizer.max_iters = f.max_iters;
  o.optimizer.epsilon = f.epsilon;
  o.optimizer.threads = threads;
  o.subsampling = ParseSubsampling(f.subsample);
  o.apply_asm = !f.no_asm;
  o.optimizer.Validate();
  return o;
}

struct Job {
  std::string input;
  std::string output;
  double beta = 0.0;
};

ManifestRow RunHmosdq(const Job& job, const RgbImage& image, const Loaded& table,
                      const CodingFlags& f, int threads) {
  const CompressResult r = CompressHmosdq(image, table.table, OptionsFor(f, job.beta, threads));
  WriteFileAtomic(job.output, r.jpeg.bytes);
  ManifestRow row;
  row.kind = "hmosdq";
  row.input = job.input;
  row.output = job.output;
  row.width = image.width();
  row.height = image.height();
  row.subsample = f.subsample;
  row.lambda = f.lambda;
  row.beta = job.beta;
  row.quality = f.quality;
  row.sensitivity = f.sensitivity;
  row.file_bytes = r.jpeg.bytes.size();
  row.bpp = r.jpeg.rate.bpp;
  row.psnr = r.psnr;
  row.iterations = r.iterations();
  row.qy = r.coefficients.luma_q.ToString();
  row.qc = r.coefficients.chroma_q.ToString();
  return row;
}

ManifestRow RunBaseline(const Job& job, const RgbImage& image, const CodingFlags& f) {
  const EncodedJpeg jpeg = EncodeBaseline(image, f.quality, ParseSubsampling(f.subsample), false);
  WriteFileAtomic(job.output, jpeg.bytes);
  ManifestRow row;
  row.kind = "baseline";
  row.input = job.input;
  row.output = job.output;
  row.width = image.width();
  row.height = image.height();
  row.subsample = f.subsample;
  row.quality = f.quality;
  row.file_bytes = jpeg.bytes.size();
  row.bpp = jpeg.rate.bpp;
  row.psnr = Psnr(image, DecodeJfif(jpeg.bytes).image);
  row.qy = AnnexKLumaTable(f.quality).ToString();
  row.qc = AnnexKChromaTable(f.quality).ToString();
  return row;
}

void Report(std::ostream& out, const ManifestRow& r) {
  out << r.output << ": " << r.file_bytes << " bytes, " << FormatReal(r.bpp) << " bpp, "
      << FormatReal(r.psnr) << " dB";
  if (r.kind == "hmosdq") out << ", " << r.iterations << " iterations";
  out << "\n";
}

std::string OutputFor(const std::string& input, const std::string& out_flag, bool many,
                      const std::string& suffix) {
  const fs::path in(input);
  const std::string name = in.stem().string() + suffix + ".jpg";
  if (out_flag.empty()) return (in.parent_path() / name).string();
  if (many || fs::is_directory(out_flag)) {
    fs::create_directories(out_flag);
    return (fs::path(out_flag) / name).string();
  }
  return out_flag;
}

int CmdCompress(const std::vector<std::string>& inputs, const std::string& out_flag,
                const CodingFlags& f, std::optional<double> beta, bool baseline,
                std::ostream& out) {
  if (!baseline && !beta) throw InvalidArgument("compress needs --beta (or --baseline)");
  const Loaded table = baseline ? Loaded{} : LoadTableFor(f);
  if (!baseline) OptionsFor(f, *beta, 0);
  std::vector<ManifestRow> rows;
  const bool many = inputs.size() > 1;
  for (const std::string& input : inputs) {
    const RgbImage image = ReadLosslessImage(input);
    Job job{input, OutputFor(input, out_flag, many, ""), beta.value_or(0.0)};
    ManifestRow row = baseline ? RunBaseline(job, image, f)
                               : RunHmosdq(job, image, table, f, 0);
    Report(out, row);
    rows.push_back(std::move(row));
  }
  if (!f.manifest.empty()) AppendManifest(f.manifest, rows);
  return kExitOk;
}

std::vector<std::string> ListImages(const std::string& dir) {
  if (!fs::is_directory(dir)) throw IoError(dir + " is not a directory");
  std::vector<std::string> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    std::vector<uint8_t> head(8);
    {
      std::ifstream in(e.path(), std::ios::binary);
      in.read(reinterpret_cast<char*>(head.data()), 8);
      head.resize(size_t(in.gcount()));
    }
    const ImageFormat fmt = DetectFormat(head);
    if (fmt == ImageFormat::kPng || fmt == ImageFormat::kPpm || fmt == ImageFormat::kBmp) {
      out.push_back(e.path().string());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

int CmdSweep(const std::string& dir, const std::string& out_dir, const CodingFlags& f,
             std::vector<double> betas, std::ostream& out, std::ostream& err) {
  if (betas.empty()) throw InvalidArgument("sweep needs --beta or --beta-range");
  std::sort(betas.begin(), betas.end());
  betas.erase(std::unique(betas.begin(), betas.end()), betas.end());
  const Loaded table = LoadTableFor(f);
  for (double b : betas) OptionsFor(f, b, 0);
  const std::vector<std::string> images = ListImages(dir);
  if (images.empty()) throw InvalidArgument("no PNG, PPM or BMP images in " + dir);
  const std::string target = out_dir.empty() ? dir : out_dir;
  fs::create_directories(target);

  std::vector<Job> jobs;
  for (double b : betas) {
    for (const std::string& in : images) {
      jobs.push_back({in, OutputFor(in, target, true, "_b" + FormatReal(b)), b});
    }
  }
  const int outer = std::min<int>(ResolveThreadCount(0), int(jobs.size()));
  const int inner = outer > 1 ? 1 : 0;
  std::vector<ManifestRow> rows(jobs.size());
  ParallelFor(jobs.size(), outer, [&](size_t begin, size_t end) {
    for (size_t i = begin; i < end; ++i) {
      const RgbImage image = ReadLosslessImage(jobs[i].input);
      rows[i] = RunHmosdq(jobs[i], image, table, f, inner);
    }
  });
  for (const ManifestRow& r : rows) Report(out, r);

  std::vector<ManifestRow> all = rows;
  std::vector<double> mean_bpp;
  for (size_t bi = 0; bi < betas.size(); ++bi) {
    ManifestRow agg;
    agg.kind = "aggregate";
    agg.input = dir;
    agg.subsample = f.subsample;
    agg.lambda = f.lambda;
    agg.beta = betas[bi];
    agg.quality = f.quality;
    agg.sensitivity = f.sensitivity;
    agg.images = int(images.size());
    double bpp = 0.0, psnr = 0.0;
    for (size_t k = 0; k < images.size(); ++k) {
      const ManifestRow& r = rows[bi * images.size() + k];
      agg.file_bytes += r.file_bytes;
      bpp += r.bpp;
      psnr += r.psnr;
      agg.iterations = std::max(agg.iterations, r.iterations);
    }
    agg.bpp = bpp / double(images.size());
    agg.psnr = psnr / double(images.size());
    mean_bpp.push_back(agg.bpp);
    out << "beta " << FormatReal(agg.beta) << ": mean " << FormatReal(agg.bpp) << " bpp, "
        << FormatReal(agg.psnr) << " dB over " << images.size() << " images\n";
    all.push_back(std::move(agg));
  }
  bool decreasing = true;
  for (size_t i = 1; i < mean_bpp.size(); ++i) decreasing &= mean_bpp[i] < mean_bpp[i - 1];
  if (!decreasing) err << "warning: mean bpp is not strictly decreasing in beta\n";
  const std::string note =
      std::string("mean bpp strictly decreasing in beta: ") + (decreasing ? "yes" : "no");
  if (!f.manifest.empty()) AppendManifest(f.manifest, all, {note});
  return kExitOk;
}

int CmdDecompress(const std::string& input, const std::string& output, std::ostream& out) {
  const std::vector<uint8_t> bytes = ReadFileBytes(input);
  if (DetectFormat(bytes) != ImageFormat::kJpeg) throw UnsupportedFormat(input + " is not a JPEG");
  const DecodedJpeg d = DecodeJfif(bytes);
  const std::string target =
      output.empty() ? (fs::path(input).replace_extension(".png")).string() : output;
  WriteImage(d.image, target);
  out << target << ": " << d.image.width() << "x" << d.image.height() << "\n";
  return kExitOk;
}

int CmdMetrics(const std::string& original, const std::string& compressed, std::ostream& out) {
  const RgbImage a = ReadAnyImage(original);
  const std::vector<uint8_t> bytes = ReadFileBytes(compressed);
  const RgbImage b = DecodeAnyImage(bytes);
  const double psnr = Psnr(a, b);
  out << "psnr_db=" << FormatReal(psnr) << " bpp="
      << FormatReal(BitsPerPixel(bytes.size(), a.width(), a.height()))
      << " file_bytes=" << bytes.size() << " width=" << a.width() << " height=" << a.height()
      << "\n";
  return kExitOk;
}

int CmdAsm(int m, std::optional<int> n, const std::string& input, const std::string& output,
           std::ostream& out) {
  const SensitivityTable table = LoadSensitivity(input);
  const int source = n.value_or(table.resolution);
  if (source != table.resolution) {
    throw InvalidArgument("--n " + std::to_string(source) +
                          " differs from the table resolution " +
                          std::to_string(table.resolution));
  }
  const AsmJacobian j = BuildAsmJacobian(m, source);
  WriteTextAtomic(output, SerializeSensitivity(MapSensitivity(table, j)));
  out << output << ": resolution " << source << " -> " << m << ", block " << j.target_block
      << "\n";
  return kExitOk;
}

}  // namespace

std::vector<double> ParseBetaRange(const std::string& range) {
  std::vector<std::string> parts;
  std::stringstream ss(range);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 3) throw InvalidArgument("--beta-range wants lo:hi:n");
  auto real = [](const std::string& s) {
    double v = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) {
      throw InvalidArgument("bad number '" + s + "' in --beta-range");
    }
    return v;
  };
  const double lo = real(parts[0]);
  const double hi = real(parts[1]);
  int n = 0;
  auto [p, ec] = std::from_chars(parts[2].data(), parts[2].data() + parts[2].size(), n);
  if (ec != std::errc() || p != parts[2].data() + parts[2].size() || n < 1) {
    throw InvalidArgument("bad count in --beta-range");
  }
  if (!(lo > 0.0) || !(hi >= lo) || !std::isfinite(hi)) {
    throw InvalidArgument("--beta-range needs 0 < lo <= hi");
  }
  if (n == 1) return {lo};
  std::vector<double> out;
  for (int i = 0; i < n; ++i) {
    out.push_back(i == n - 1 ? hi : lo * std::pow(hi / lo, double(i) / (n - 1)));
  }
  return out;
}

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"HMOSDQ JPEG encoder: baseline JPEG for human and machine viewers"};
  app.name(args.empty() ? "hmojpeg" : fs::path(args[0]).filename().string());
  app.require_subcommand(1);

  CodingFlags coding;
  std::vector<std::string> inputs;
  std::string out_path;
  std::optional<double> beta;
  bool baseline = false;
  auto* compress = app.add_subcommand("compress", "Compress images to baseline JPEG");
  AddCodingFlags(compress, &coding);
  compress->add_option("--beta", beta, "Rate multiplier")->check(CLI::PositiveNumber);
  compress->add_flag("--baseline", baseline,
                     "Plain JPEG: Annex K tables at --quality, rounding, standard Huffman");
  compress->add_option("--out", out_path, "Output file, or directory for several inputs");
  compress->add_option("inputs", inputs, "PNG, PPM or BMP images")->required();

  std::string sweep_dir;
  std::vector<double> beta_list;
  std::string beta_range;
  auto* sweep = app.add_subcommand("sweep", "Compress a directory at several beta values");
  AddCodingFlags(sweep, &coding);
  auto* list_opt = sweep->add_option("--beta", beta_list, "Beta values")
                       ->delimiter(',')
                       ->check(CLI::PositiveNumber);
  auto* range_opt =
      sweep->add_option("--beta-range", beta_range, "Geometric range lo:hi:n");
  list_opt->excludes(range_opt);
  sweep->add_option("--out", out_path, "Output directory (default: the input directory)");
  sweep->add_option("dir", sweep_dir, "Directory of images")->required();

  std::string jpeg_in;
  auto* decompress = app.add_subcommand("decompress", "Decode a JPEG to PNG or PPM");
  decompress->add_option("input", jpeg_in, "JPEG file")->required();
  decompress->add_option("--out", out_path, "Output image (.png or .ppm)");

  std::string original, compressed;
  auto* metrics = app.add_subcommand("metrics", "PSNR and BPP of a compressed image");
  metrics->add_option("original", original, "Reference image")->required();
  metrics->add_option("compressed", compressed, "Compressed image")->required();

  int asm_m = 0;
  std::optional<int> asm_n;
  std::string asm_in;
  auto* asm_cmd = app.add_subcommand("asm", "Remap a sensitivity table to a larger resolution");
  asm_cmd->add_option("--m", asm_m, "Target short side")->required()->check(CLI::PositiveNumber);
  asm_cmd->add_option("--n", asm_n, "Source short side (default: the table's)");
  asm_cmd->add_option("--sensitivity", asm_in, "Input table")->required();
  asm_cmd->add_option("--out", out_path, "Output table")->required();

  try {
    std::vector<std::string> rest(args.rbegin(), args.rend());
    if (!rest.empty()) rest.pop_back();
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*compress) return CmdCompress(inputs, out_path, coding, beta, baseline, out);
    if (*sweep) {
      std::vector<double> betas = beta_list;
      if (!beta_range.empty()) betas = ParseBetaRange(beta_range);
      return CmdSweep(sweep_dir, out_path, coding, betas, out, err);
    }
    if (*decompress) return CmdDecompress(jpeg_in, out_path, out);
    if (*metrics) return CmdMetrics(original, compressed, out);
    if (*asm_cmd) return CmdAsm(asm_m, asm_n, asm_in, out_path, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const SchemaError& e) {
    err << "error: " << e.what() << "\n";
    return kExitSchema;
  } catch (const UnsupportedFormat& e) {
    err << "error: " << e.what() << "\n";
    return kExitUnsupportedFormat;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidArgument;
  } catch (const DecodeError& e) {
    err << "error: " << e.what() << "\n";
    return kExitDecode;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace hmojpeg
