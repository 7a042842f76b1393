// Command line front end: encode, eval, gen-tasks, bench.
// Talks to the library through the C API in dctembed.h only.

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "dctembed.h"
#include "json.hpp"

namespace {

// exit 1: the command line itself is wrong
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// exit 2: the command line was fine but the data was not
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(dcte_status status, const std::string& context) {
  if (status == DCTE_OK) return;
  throw DataError(context + ": " + dcte_last_error());
}

using PlanPtr = std::unique_ptr<dcte_plan, decltype(&dcte_plan_destroy)>;
using TablePtr = std::unique_ptr<dcte_table, decltype(&dcte_table_destroy)>;
using DatasetPtr = std::unique_ptr<dcte_dataset, decltype(&dcte_dataset_destroy)>;

PlanPtr make_plan(std::size_t max_len) {
  dcte_plan* plan = nullptr;
  check(dcte_plan_create(max_len, &plan), "creating transform plan");
  return {plan, &dcte_plan_destroy};
}

dcte_method parse_method(const std::string& name) {
  dcte_method method;
  if (dcte_method_parse(name.c_str(), &method) != DCTE_OK) {
    throw UsageError(dcte_last_error());
  }
  return method;
}

dcte_oov_policy parse_oov(const std::string& name) {
  dcte_oov_policy policy;
  if (dcte_oov_policy_parse(name.c_str(), &policy) != DCTE_OK) {
    throw UsageError(dcte_last_error());
  }
  return policy;
}

bool needs_k(dcte_method method) {
  return method == DCTE_METHOD_DCT || method == DCTE_METHOD_DCT_STAR;
}

std::string format_float(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", value);
  return buf;
}

std::string format_acc(double value) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%.4f", value);
  return buf;
}

// ---- embedding output ---------------------------------------------------

void write_u32_le(std::ostream& os, std::uint32_t value) {
  unsigned char bytes[4] = {
      static_cast<unsigned char>(value & 0xff),
      static_cast<unsigned char>((value >> 8) & 0xff),
      static_cast<unsigned char>((value >> 16) & 0xff),
      static_cast<unsigned char>((value >> 24) & 0xff),
  };
  os.write(reinterpret_cast<const char*>(bytes), 4);
}

void write_bin_header(std::ostream& os, std::uint32_t record_len) {
  os.write("DCTE", 4);
  write_u32_le(os, 1);           // version
  write_u32_le(os, record_len);  // values per record
  write_u32_le(os, 32);          // float width in bits
}

void write_record_bin(std::ostream& os, const std::vector<float>& record) {
  static_assert(sizeof(float) == 4);
  if constexpr (std::endian::native == std::endian::little) {
    os.write(reinterpret_cast<const char*>(record.data()),
             static_cast<std::streamsize>(record.size() * 4));
  } else {
    for (float f : record) {
      std::uint32_t bits = std::bit_cast<std::uint32_t>(f);
      write_u32_le(os, bits);
    }
  }
}

void write_record_tsv(std::ostream& os, const std::vector<float>& record) {
  for (std::size_t i = 0; i < record.size(); ++i) {
    if (i) os.put('\t');
    os << format_float(record[i]);
  }
  os.put('\n');
}

// ---- encode -------------------------------------------------------------

struct EncodeOptions {
  std::string input;  // empty = stdin
  std::string vectors;
  std::string method = "dct";
  std::size_t k = 0;
  bool k_given = false;
  std::string oov = "skip";
  std::string format = "tsv";
  std::string out;  // empty = stdout
  std::size_t max_len = 256;
  std::size_t threads = 1;
};

struct LineOutcome {
  bool has_record = false;
  bool empty_skipped = false;
  bool truncated = false;
  std::size_t oov = 0;
  std::vector<float> record;
  std::string error;
};

struct EncodeContext {
  const dcte_plan* plan;
  const dcte_table* table;
  dcte_method method;
  std::size_t k;
  std::size_t max_len;
  std::size_t record_len;
};

LineOutcome encode_one(const EncodeContext& ctx, const std::string& line) {
  LineOutcome out;
  double* values = nullptr;
  std::size_t rows = 0, dim = 0, oov = 0;
  dcte_status s = dcte_embed_text(ctx.table, line.c_str(), &values, &rows, &dim, &oov);
  if (s != DCTE_OK) {
    out.error = dcte_last_error();
    return out;
  }
  out.oov = oov;
  if (rows > ctx.max_len) {  // keep the leading words only
    rows = ctx.max_len;
    out.truncated = true;
  }
  if (rows == 0 && ctx.method != DCTE_METHOD_DCT) {
    out.empty_skipped = true;
    dcte_free(values);
    return out;
  }
  std::vector<double> buf(ctx.record_len);
  s = dcte_encode_matrix(ctx.plan, values, rows, dim, ctx.method, ctx.k, buf.data());
  dcte_free(values);
  if (s != DCTE_OK) {
    out.error = dcte_last_error();
    return out;
  }
  out.record.assign(buf.begin(), buf.end());  // embeddings ship as 32-bit floats
  out.has_record = true;
  return out;
}

int run_encode(const EncodeOptions& opt) {
  const dcte_method method = parse_method(opt.method);
  if (needs_k(method)) {
    if (!opt.k_given) throw UsageError("--k is required for method " + opt.method);
    if (opt.k == 0) throw UsageError("--k must be >= 1");
  } else if (opt.k_given) {
    throw UsageError("--k applies to dct and dct-star only");
  }
  if (opt.format != "tsv" && opt.format != "bin") {
    throw UsageError("--format must be tsv or bin");
  }
  if (opt.max_len == 0) throw UsageError("--max-len must be >= 1");
  if (opt.threads == 0) throw UsageError("--threads must be >= 1");

  dcte_table* raw_table = nullptr;
  check(dcte_table_load(opt.vectors.c_str(), 0, parse_oov(opt.oov), &raw_table),
        "loading " + opt.vectors);
  TablePtr table(raw_table, &dcte_table_destroy);
  const std::size_t dim = dcte_table_dim(table.get());

  std::size_t plan_len = std::max(opt.max_len, opt.k);
  if (method == DCTE_METHOD_DCT_STAR) plan_len = std::max(plan_len, dim);
  PlanPtr plan = make_plan(plan_len);
  const std::size_t record_len = dcte_embedding_length(method, opt.k, dim);

  std::ifstream in_file;
  if (!opt.input.empty()) {
    in_file.open(opt.input);
    if (!in_file) throw DataError("cannot open input file " + opt.input);
  }
  std::istream& in = opt.input.empty() ? std::cin : in_file;

  std::ofstream out_file;
  if (!opt.out.empty()) {
    out_file.open(opt.out, std::ios::binary);
    if (!out_file) throw DataError("cannot open output file " + opt.out);
  }
  std::ostream& out = opt.out.empty() ? std::cout : out_file;
  const bool binary = opt.format == "bin";
  if (binary) write_bin_header(out, static_cast<std::uint32_t>(record_len));

  const EncodeContext ctx{plan.get(), table.get(), method, opt.k, opt.max_len,
                          record_len};
  std::size_t encoded = 0, skipped = 0, truncated = 0, oov_total = 0;
  std::size_t line_base = 0;

  const std::size_t chunk_size = 1024;  // bounds memory regardless of corpus size
  std::vector<std::string> chunk;
  chunk.reserve(chunk_size);
  std::string line;
  bool more = true;
  while (more) {
    chunk.clear();
    while (chunk.size() < chunk_size && std::getline(in, line)) {
      chunk.push_back(line);
    }
    more = in.good();
    if (chunk.empty()) break;

    std::vector<LineOutcome> outcomes(chunk.size());
    if (opt.threads <= 1 || chunk.size() == 1) {
      for (std::size_t i = 0; i < chunk.size(); ++i) {
        outcomes[i] = encode_one(ctx, chunk[i]);
      }
    } else {
      std::atomic<std::size_t> next{0};
      std::vector<std::thread> pool;
      const std::size_t workers = std::min(opt.threads, chunk.size());
      pool.reserve(workers);
      for (std::size_t t = 0; t < workers; ++t) {
        pool.emplace_back([&] {
          for (std::size_t i; (i = next.fetch_add(1)) < chunk.size();) {
            outcomes[i] = encode_one(ctx, chunk[i]);
          }
        });
      }
      for (std::thread& th : pool) th.join();
    }

    for (std::size_t i = 0; i < outcomes.size(); ++i) {
      const LineOutcome& res = outcomes[i];
      const std::size_t line_no = line_base + i + 1;
      if (!res.error.empty()) {
        throw DataError("line " + std::to_string(line_no) + ": " + res.error);
      }
      oov_total += res.oov;
      if (res.truncated) {
        ++truncated;
        std::cerr << "warning: line " << line_no << ": truncated to "
                  << opt.max_len << " words\n";
      }
      if (res.empty_skipped) {
        ++skipped;
        std::cerr << "warning: line " << line_no
                  << ": no usable words, skipped (" << opt.method
                  << " needs at least one)\n";
        continue;
      }
      if (res.has_record) {
        if (binary) write_record_bin(out, res.record);
        else write_record_tsv(out, res.record);
        ++encoded;
      }
    }
    line_base += outcomes.size();
  }
  out.flush();
  if (!out) throw DataError("failed writing output");

  std::cerr << "encoded " << encoded << " sentences, skipped " << skipped
            << ", oov tokens " << oov_total << ", record length " << record_len;
  if (truncated) std::cerr << ", truncated " << truncated;
  std::cerr << "\n";
  return 0;
}

// ---- eval ---------------------------------------------------------------

struct EvalOptions {
  std::string dataset;
  std::string task;  // default: dataset file stem
  std::string vectors;
  std::string method = "dct";
  std::size_t k = 0;
  bool k_given = false;
  std::string oov = "skip";
  std::uint64_t seed = 1;
  std::string out;
  // synthetic vocabulary, used when --vectors is absent
  std::size_t vocab = 100;
  std::size_t dim = 50;
  std::size_t bands = 4;
  double strength = 3.0;
};

std::string path_stem(const std::string& path) {
  const std::size_t slash = path.find_last_of("/\\");
  const std::size_t start = slash == std::string::npos ? 0 : slash + 1;
  std::size_t end = path.rfind('.');
  if (end == std::string::npos || end <= start) end = path.size();
  return path.substr(start, end - start);
}

int run_eval(const EvalOptions& opt) {
  const dcte_method method = parse_method(opt.method);
  if (needs_k(method)) {
    if (!opt.k_given) throw UsageError("--k is required for method " + opt.method);
    if (opt.k == 0) throw UsageError("--k must be >= 1");
  } else if (opt.k_given) {
    throw UsageError("--k applies to dct and dct-star only");
  }

  const std::string task = opt.task.empty() ? path_stem(opt.dataset) : opt.task;
  dcte_dataset* raw_dataset = nullptr;
  check(dcte_dataset_load_tsv(opt.dataset.c_str(), task.c_str(), &raw_dataset),
        "loading " + opt.dataset);
  DatasetPtr dataset(raw_dataset, &dcte_dataset_destroy);

  dcte_table* raw_table = nullptr;
  if (!opt.vectors.empty()) {
    check(dcte_table_load(opt.vectors.c_str(), 0, parse_oov(opt.oov), &raw_table),
          "loading " + opt.vectors);
  } else {
    dcte_synthetic_config config;
    dcte_synthetic_config_init(&config);
    config.vocab_size = opt.vocab;
    config.dim = opt.dim;
    config.order_bands = opt.bands;
    config.order_strength = opt.strength;
    config.seed = opt.seed;
    check(dcte_table_create_synthetic(&config, parse_oov(opt.oov), &raw_table),
          "building synthetic vocabulary");
  }
  TablePtr table(raw_table, &dcte_table_destroy);

  const std::size_t grid_size = dcte_default_grid(opt.seed, nullptr, 0);
  std::vector<dcte_classifier_config> grid(grid_size);
  dcte_default_grid(opt.seed, grid.data(), grid.size());

  dcte_eval_result result;
  check(dcte_probe_eval(table.get(), dataset.get(), method, opt.k, grid.data(),
                        grid.size(), 1, &result),
        "evaluating " + task);

  std::string report = "#task\tmethod\tk\thidden\tdropout\tdev_acc\ttest_acc\n";
  report += task;
  report += '\t';
  report += dcte_method_name(method);
  report += '\t';
  report += needs_k(method) ? std::to_string(opt.k) : std::string("-");
  report += '\t';
  report += std::to_string(result.selected.hidden_size);
  report += '\t';
  report += format_float(result.selected.dropout);
  report += '\t';
  report += format_acc(result.dev_accuracy);
  report += '\t';
  report += format_acc(result.test_accuracy);
  report += '\n';

  std::cout << report;
  if (!opt.out.empty()) {
    std::ofstream out_file(opt.out);
    if (!out_file) throw DataError("cannot open output file " + opt.out);
    out_file << report;
    if (!out_file.flush()) throw DataError("failed writing " + opt.out);
  }

  std::cerr << "splits " << result.train_count << "/" << result.dev_count << "/"
            << result.test_count << ", oov tokens " << result.oov_tokens
            << ", grid size " << grid.size() << "\n";
  return 0;
}

// ---- gen-tasks ----------------------------------------------------------

struct GenOptions {
  std::string task;
  std::string out;
  std::uint64_t seed = 1;
  std::size_t vocab = 100;
  std::string buckets = "1-2,3-4,5-6,7-8,9-10,11-12";
  std::size_t per_label = 200;
  std::size_t targets = 10;
  std::size_t sent_len = 0;  // 0 = task default
  std::size_t pairs = 1000;
};

void parse_buckets(const std::string& text, std::vector<std::size_t>& mins,
                   std::vector<std::size_t>& maxs) {
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    const std::string part = text.substr(pos, comma - pos);
    const std::size_t dash = part.find('-');
    try {
      if (dash == std::string::npos) {
        const std::size_t v = std::stoul(part);
        mins.push_back(v);
        maxs.push_back(v);
      } else {
        mins.push_back(std::stoul(part.substr(0, dash)));
        maxs.push_back(std::stoul(part.substr(dash + 1)));
      }
    } catch (const std::exception&) {
      throw UsageError("cannot parse bucket \"" + part +
                       "\" (expected min-max, e.g. 3-5)");
    }
    pos = comma + 1;
  }
}

int run_gen_tasks(const GenOptions& opt) {
  nlohmann::json params;
  dcte_dataset* raw = nullptr;
  if (opt.task == "sentlen") {
    std::vector<std::size_t> mins, maxs;
    parse_buckets(opt.buckets, mins, maxs);
    check(dcte_gen_sentlen(opt.vocab, mins.data(), maxs.data(), mins.size(),
                           opt.per_label, opt.seed, &raw),
          "generating sentlen");
    params["vocab"] = opt.vocab;
    params["buckets"] = opt.buckets;
    params["per_label"] = opt.per_label;
  } else if (opt.task == "wc") {
    const std::size_t sent_len = opt.sent_len ? opt.sent_len : 8;
    check(dcte_gen_wc(opt.vocab, opt.targets, opt.per_label, sent_len, opt.seed,
                      &raw),
          "generating wc");
    params["vocab"] = opt.vocab;
    params["targets"] = opt.targets;
    params["per_label"] = opt.per_label;
    params["sent_len"] = sent_len;
  } else if (opt.task == "bshift") {
    const std::size_t sent_len = opt.sent_len ? opt.sent_len : 4;
    check(dcte_gen_bshift(opt.pairs, sent_len, opt.vocab, opt.seed, &raw),
          "generating bshift");
    params["vocab"] = opt.vocab;
    params["pairs"] = opt.pairs;
    params["sent_len"] = sent_len;
  } else {
    throw UsageError("--task must be sentlen, wc or bshift");
  }
  DatasetPtr dataset(raw, &dcte_dataset_destroy);

  check(dcte_dataset_save_tsv(dataset.get(), opt.out.c_str()),
        "writing " + opt.out);

  nlohmann::json manifest;
  manifest["task"] = opt.task;
  manifest["output"] = opt.out;
  manifest["seed"] = opt.seed;
  manifest["examples"] = dcte_dataset_size(dataset.get());
  manifest["labels"] = dcte_dataset_label_count(dataset.get());
  manifest["params"] = params;
  const std::string manifest_path = opt.out + ".manifest.json";
  std::ofstream mf(manifest_path);
  if (!mf) throw DataError("cannot open " + manifest_path);
  mf << manifest.dump(2) << "\n";
  if (!mf.flush()) throw DataError("failed writing " + manifest_path);

  std::cerr << "wrote " << dcte_dataset_size(dataset.get()) << " examples ("
            << dcte_dataset_label_count(dataset.get()) << " labels) to "
            << opt.out << "\nmanifest: " << manifest_path << "\n";
  return 0;
}

// ---- bench --------------------------------------------------------------

struct BenchOptions {
  std::string corpus;
  std::string vectors;
  std::vector<std::size_t> k_list = {1, 2, 3, 4, 5, 6, 7};
  std::string oov = "skip";
  std::size_t max_len = 256;
  std::size_t reps = 7;
  std::size_t warmup = 2;
};

struct BenchMatrix {
  std::size_t rows = 0;
  std::vector<double> values;
};

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n % 2) return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

int run_bench(const BenchOptions& opt) {
  if (opt.k_list.empty()) throw UsageError("--k needs at least one value");
  for (std::size_t k : opt.k_list) {
    if (k == 0) throw UsageError("--k values must be >= 1");
  }
  if (opt.reps < 5) throw UsageError("--reps must be >= 5 for a stable median");
  if (opt.max_len == 0) throw UsageError("--max-len must be >= 1");

  dcte_table* raw_table = nullptr;
  check(dcte_table_load(opt.vectors.c_str(), 0, parse_oov(opt.oov), &raw_table),
        "loading " + opt.vectors);
  TablePtr table(raw_table, &dcte_table_destroy);
  const std::size_t dim = dcte_table_dim(table.get());

  std::ifstream in(opt.corpus);
  if (!in) throw DataError("cannot open corpus " + opt.corpus);

  std::vector<BenchMatrix> matrices;
  std::size_t skipped = 0;
  std::string line;
  while (std::getline(in, line)) {
    double* values = nullptr;
    std::size_t rows = 0, mdim = 0, oov = 0;
    check(dcte_embed_text(table.get(), line.c_str(), &values, &rows, &mdim, &oov),
          "embedding corpus line");
    if (rows > opt.max_len) rows = opt.max_len;
    if (rows == 0) {
      ++skipped;
      dcte_free(values);
      continue;
    }
    BenchMatrix m;
    m.rows = rows;
    m.values.assign(values, values + rows * mdim);
    dcte_free(values);
    matrices.push_back(std::move(m));
  }
  if (matrices.empty()) throw DataError("corpus has no encodable sentences");

  const std::size_t k_max = *std::max_element(opt.k_list.begin(), opt.k_list.end());
  PlanPtr plan = make_plan(std::max(opt.max_len, k_max));

  std::vector<double> out_buf(std::max(dim, k_max * dim));
  double sink = 0.0;  // keeps the encode results observable

  const auto time_once = [&](dcte_method method, std::size_t k) {
    const auto start = std::chrono::steady_clock::now();
    for (const BenchMatrix& m : matrices) {
      check(dcte_encode_matrix(plan.get(), m.values.data(), m.rows, dim, method,
                               k, out_buf.data()),
            "benchmark encode");
      sink += out_buf[0];
    }
    const auto stop = std::chrono::steady_clock::now();
    const double ns =
        std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count();
    return ns / static_cast<double>(matrices.size());
  };
  const auto time_method = [&](dcte_method method, std::size_t k) {
    for (std::size_t r = 0; r < opt.warmup; ++r) time_once(method, k);
    std::vector<double> times(opt.reps);
    for (std::size_t r = 0; r < opt.reps; ++r) times[r] = time_once(method, k);
    return median(std::move(times));
  };

  char buf[64];
  const double avg_ns = time_method(DCTE_METHOD_AVG, 0);
  std::snprintf(buf, sizeof(buf), "%.1f", avg_ns);
  std::cout << "avg\t-\t" << buf << "\n";

  std::vector<double> ks, ts;
  for (std::size_t k : opt.k_list) {
    const double dct_ns = time_method(DCTE_METHOD_DCT, k);
    std::snprintf(buf, sizeof(buf), "%.1f", dct_ns);
    std::cout << "dct\t" << k << "\t" << buf << "\n";
    ks.push_back(static_cast<double>(k));
    ts.push_back(dct_ns);
  }
  std::cout.flush();

  std::cerr << "sentences " << matrices.size() << " (skipped " << skipped
            << "), dim " << dim << ", reps " << opt.reps << " after "
            << opt.warmup << " warmup\n";
  if (ks.size() >= 2) {
    // least-squares fit of time against k
    const std::size_t n = ks.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
      sx += ks[i];
      sy += ts[i];
      sxx += ks[i] * ks[i];
      sxy += ks[i] * ts[i];
    }
    const double denom = n * sxx - sx * sx;
    const double slope = (n * sxy - sx * sy) / denom;
    const double intercept = (sy - slope * sx) / n;
    double ss_res = 0, ss_tot = 0;
    const double mean = sy / n;
    for (std::size_t i = 0; i < n; ++i) {
      const double fit = slope * ks[i] + intercept;
      ss_res += (ts[i] - fit) * (ts[i] - fit);
      ss_tot += (ts[i] - mean) * (ts[i] - mean);
    }
    const double r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
    std::snprintf(buf, sizeof(buf), "fit ns = %.1f * k + %.1f, r2 = %.3f",
                  slope, intercept, r2);
    std::cerr << buf << "\n";
  }
  if (!std::isfinite(sink)) std::cerr << "checksum overflow\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"DCT-based sentence embeddings: encode, probe, benchmark"};
  app.require_subcommand(1);

  EncodeOptions enc;
  CLI::App* enc_cmd = app.add_subcommand(
      "encode", "Pool word vectors into one embedding per input line");
  enc_cmd->add_option("input", enc.input, "Sentence file, one per line (default stdin)");
  enc_cmd->add_option("--vectors", enc.vectors, "Word vector file")->required();
  enc_cmd->add_option("--method", enc.method, "dct, avg, max or dct-star");
  enc_cmd->add_option("--k", enc.k, "Coefficients to keep (dct, dct-star)");
  enc_cmd->add_option("--oov", enc.oov, "Unknown words: skip, zero or error");
  enc_cmd->add_option("--format", enc.format, "Output format: tsv or bin");
  enc_cmd->add_option("--out", enc.out, "Output file (default stdout)");
  enc_cmd->add_option("--max-len", enc.max_len, "Longest sentence kept, in words");
  enc_cmd->add_option("--threads", enc.threads, "Worker threads");

  EvalOptions ev;
  CLI::App* eval_cmd = app.add_subcommand(
      "eval", "Train probing classifiers on pooled features and report accuracy");
  eval_cmd->add_option("--dataset", ev.dataset, "Task TSV file")->required();
  eval_cmd->add_option("--task", ev.task, "Task name (default: dataset file stem)");
  eval_cmd->add_option("--vectors", ev.vectors,
                       "Word vector file (default: synthetic vocabulary)");
  eval_cmd->add_option("--method", ev.method, "dct, avg, max or dct-star");
  eval_cmd->add_option("--k", ev.k, "Coefficients to keep (dct, dct-star)");
  eval_cmd->add_option("--oov", ev.oov, "Unknown words: skip, zero or error");
  eval_cmd->add_option("--seed", ev.seed, "Classifier and synthetic-vector seed");
  eval_cmd->add_option("--out", ev.out, "Also write the report here");
  eval_cmd->add_option("--vocab", ev.vocab, "Synthetic vocabulary size");
  eval_cmd->add_option("--dim", ev.dim, "Synthetic vector dimension");
  eval_cmd->add_option("--order-bands", ev.bands, "Synthetic position bands");
  eval_cmd->add_option("--order-strength", ev.strength,
                       "Synthetic positional signal strength");

  GenOptions gen;
  CLI::App* gen_cmd = app.add_subcommand(
      "gen-tasks", "Write a synthetic probing dataset and its manifest");
  gen_cmd->add_option("--task", gen.task, "sentlen, wc or bshift")->required();
  gen_cmd->add_option("--out", gen.out, "Dataset TSV path")->required();
  gen_cmd->add_option("--seed", gen.seed, "Generator seed");
  gen_cmd->add_option("--vocab", gen.vocab, "Vocabulary size");
  gen_cmd->add_option("--buckets", gen.buckets,
                      "sentlen length buckets, e.g. 1-4,5-8");
  gen_cmd->add_option("--per-label", gen.per_label,
                      "Examples per bucket (sentlen) or per target (wc)");
  gen_cmd->add_option("--targets", gen.targets, "wc target word count");
  gen_cmd->add_option("--sent-len", gen.sent_len,
                      "Sentence length (wc default 8, bshift default 4)");
  gen_cmd->add_option("--pairs", gen.pairs, "bshift base sentence count");

  BenchOptions bench;
  CLI::App* bench_cmd = app.add_subcommand(
      "bench", "Time pooling over a corpus, per method and k");
  bench_cmd->add_option("corpus", bench.corpus, "Sentence file")->required();
  bench_cmd->add_option("--vectors", bench.vectors, "Word vector file")->required();
  bench_cmd->add_option("--k", bench.k_list, "k values to time")->delimiter(',');
  bench_cmd->add_option("--oov", bench.oov, "Unknown words: skip, zero or error");
  bench_cmd->add_option("--max-len", bench.max_len, "Longest sentence kept");
  bench_cmd->add_option("--reps", bench.reps, "Timed repetitions per row");
  bench_cmd->add_option("--warmup", bench.warmup, "Untimed repetitions first");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    enc.k_given = enc_cmd->count("--k") > 0;
    ev.k_given = eval_cmd->count("--k") > 0;
    if (enc_cmd->parsed()) return run_encode(enc);
    if (eval_cmd->parsed()) return run_eval(ev);
    if (gen_cmd->parsed()) return run_gen_tasks(gen);
    if (bench_cmd->parsed()) return run_bench(bench);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
