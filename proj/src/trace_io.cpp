#include "biasprobe/trace_io.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace biasprobe::io {

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
    if (ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
    return std::string(buf, ptr);
}

namespace {

void append_vector(std::string& out, const std::vector<double>& values) {
    out += '[';
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        out += format_double(values[i]);
    }
    out += ']';
}

std::string snapshot_line(const optim::Snapshot& snapshot) {
    std::string line = "{\"record\":\"snapshot\",\"evaluations_used\":";
    line += std::to_string(snapshot.evaluations_used);
    line += ",\"positions\":[";
    for (std::size_t i = 0; i < snapshot.individuals.size(); ++i) {
        if (i) line += ',';
        append_vector(line, snapshot.individuals[i].position);
    }
    line += "],\"fitnesses\":[";
    for (std::size_t i = 0; i < snapshot.individuals.size(); ++i) {
        if (i) line += ',';
        line += format_double(snapshot.individuals[i].fitness);
    }
    line += "]}";
    return line;
}

std::string final_best_line(const optim::Individual& best, std::uint64_t evaluations_used) {
    std::string line = "{\"record\":\"final_best\",\"evaluations_used\":";
    line += std::to_string(evaluations_used);
    line += ",\"position\":";
    append_vector(line, best.position);
    line += ",\"fitness\":";
    line += format_double(best.fitness);
    line += '}';
    return line;
}

}  // namespace

TraceWriter::TraceWriter(const std::string& path, const nlohmann::json& header) : path_(path) {
    out_.open(path);
    if (!out_) throw std::runtime_error("cannot open trace file for writing: " + path);
    out_ << header.dump() << '\n';
    out_.flush();
}

void TraceWriter::write_snapshot(const optim::Snapshot& snapshot) {
    out_ << snapshot_line(snapshot) << '\n';
    out_.flush();
    if (!out_) throw std::runtime_error("trace write failed: " + path_);
}

void TraceWriter::write_final_best(const optim::Individual& best, std::uint64_t evaluations_used) {
    out_ << final_best_line(best, evaluations_used) << '\n';
    out_.flush();
    if (!out_) throw std::runtime_error("trace write failed: " + path_);
}

optim::RunTrace read_trace(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open trace file: " + path);

    optim::RunTrace trace;
    std::string line;
    std::size_t lineno = 0;
    bool saw_header = false, saw_final = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded())
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": malformed JSON line");
        const std::string record = j.value("record", "");
        if (record == "header") {
            trace.config = j;
            trace.master_seed = j.value("master_seed", std::uint64_t{0});
            trace.run_index = j.value("run_index", std::uint32_t{0});
            saw_header = true;
        } else if (record == "snapshot") {
            if (!saw_header)
                throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                         ": snapshot before header");
            optim::Snapshot snap;
            snap.evaluations_used = j.at("evaluations_used").get<std::uint64_t>();
            const auto& positions = j.at("positions");
            const auto& fitnesses = j.at("fitnesses");
            if (positions.size() != fitnesses.size())
                throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                         ": positions/fitnesses length mismatch");
            snap.individuals.resize(positions.size());
            for (std::size_t i = 0; i < positions.size(); ++i) {
                snap.individuals[i].position = positions[i].get<std::vector<double>>();
                snap.individuals[i].fitness = fitnesses[i].get<double>();
            }
            trace.snapshots.push_back(std::move(snap));
        } else if (record == "final_best") {
            trace.final_best.position = j.at("position").get<std::vector<double>>();
            trace.final_best.fitness = j.at("fitness").get<double>();
            saw_final = true;
        } else {
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": unknown record type '" + record + "'");
        }
    }
    if (!saw_header) throw std::runtime_error(path + ": missing header record");
    if (!saw_final) throw std::runtime_error(path + ": missing final_best record");
    return trace;
}

void write_trace(const std::string& path, const optim::RunTrace& trace,
                 std::uint64_t evaluations_used) {
    TraceWriter writer(path, trace.config);
    for (const auto& snap : trace.snapshots) writer.write_snapshot(snap);
    writer.write_final_best(trace.final_best, evaluations_used);
}

std::string config_hash(const nlohmann::json& config) {
    const std::string dump = config.dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : dump) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    static const char* digits = "0123456789abcdef";
    for (int i = 15; i >= 0; --i) {
        buf[i] = digits[h & 0xF];
        h >>= 4;
    }
    buf[16] = '\0';
    return std::string(buf, 16);
}

}  // namespace biasprobe::io
