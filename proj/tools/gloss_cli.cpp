// Copyright 2026 The Gloss Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// gloss: validate, convert, ingest and query location events; distill
// trails.
//
// Exit status: 0 success, 1 validation (or lookup) failure, 2 I/O failure.

#include <signal.h>

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gloss/gloss.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kIo = 2;

int exit_code_for(const gloss::Error& e) {
    switch (e.code()) {
    case gloss::ErrorCode::IoFailure:
    case gloss::ErrorCode::SinkUnavailable:
    case gloss::ErrorCode::FramingError: return kIo;
    default: return kInvalid;
    }
}

void print_report(const std::string& name, const gloss::ValidationReport& r) {
    for (const auto& v : r.violations)
        std::cout << name << ": " << v.path << ": [" << v.rule << "] " << v.detail << "\n";
    for (const auto& w : r.warnings)
        std::cerr << name << ": warning: " << w << "\n";
}

gloss::eventd::EventStore make_store(const std::string& label, const std::string& journal) {
    gloss::eventd::StoreConfig cfg;
    cfg.step_label = label;
    if (!journal.empty())
        cfg.journal = journal;
    return gloss::eventd::EventStore(std::move(cfg));
}

std::string describe(const gloss::Observation& o) {
    std::string out = "time " + gloss::format_datetime(o.time_of_observation) + "\n";
    try {
        const auto r = gloss::resolve_region(o.where);
        if (const auto& c = r.distinguished_point.coordinate)
            out += "position " + gloss::wire_detail::format_floating(c->latitude.value()) + " " +
                   gloss::wire_detail::format_floating(c->longitude.value()) + "\n";
    } catch (const gloss::Error&) {
        // Symbolic places without a local region print as XML only.
    }
    out += "where " + gloss::serialize_where(o.where) + "\n";
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gloss location-event tool"};
    app.require_subcommand(1);
    std::string step_label = "processed by gloss";
    std::string journal;
    app.add_option("--step-label", step_label, "Description recorded in this node's processing step");
    app.add_option("--journal", journal, "Append-only journal of accepted documents");

    std::string validate_file;
    auto* validate = app.add_subcommand("validate", "Check a locationEvent document");
    validate->add_option("file", validate_file)->required();

    std::string convert_file;
    bool canonical = false;
    auto* convert = app.add_subcommand("convert", "Re-serialize a document");
    convert->add_option("file", convert_file)->required();
    convert->add_flag("--canonical", canonical, "Canonical UTF-8 form")->required();

    std::vector<std::string> ingest_files;
    auto* ingest = app.add_subcommand("ingest", "Ingest documents into the store");
    ingest->add_option("files", ingest_files)->required();

    std::uint16_t listen_port = 0;
    auto* listen = app.add_subcommand("listen", "Accept length-prefixed documents over TCP");
    listen->add_option("port", listen_port)->required();

    auto* query = app.add_subcommand("query", "Query the journal");
    query->require_subcommand(1);
    std::string query_id;
    auto* last = query->add_subcommand("last", "Most recent known position of a subject");
    last->add_option("id", query_id, "<form>:<value>, e.g. email:someone@example.org")->required();

    auto* trail = app.add_subcommand("trail", "Trail operations");
    trail->require_subcommand(1);
    std::string epsilon_text;
    std::vector<std::string> manifests;
    auto* distill = trail->add_subcommand("distill", "Distill an archetypal trail from observed trails");
    distill->add_option("--epsilon", epsilon_text, "Clustering distance, e.g. 50m or 0.2km")->required();
    distill->add_option("manifests", manifests)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*validate) {
            const auto bytes = gloss::detail::read_file(validate_file);
            const auto report = gloss::validate_document(bytes);
            print_report(validate_file, report);
            std::cout << validate_file << ": " << (report.ok() ? "valid" : "invalid") << "\n";
            return report.ok() ? kOk : kInvalid;
        }
        if (*convert) {
            const auto bytes = gloss::detail::read_file(convert_file);
            gloss::ValidationReport report;
            try {
                const auto ev = gloss::parse_location_event(bytes, &report);
                std::cout << gloss::serialize_location_event(ev);
            } catch (const gloss::SchemaError& e) {
                print_report(convert_file, e.report());
                return kInvalid;
            }
            return kOk;
        }
        if (*ingest) {
            auto store = make_store(step_label, journal);
            if (!journal.empty())
                store.replay_journal(journal);
            int status = kOk;
            for (const auto& f : ingest_files) {
                try {
                    const auto ack = store.ingest(gloss::detail::read_file(f));
                    std::cout << f << ": OK " << ack.accepted << " " << ack.subject.to_form() << "\n";
                } catch (const gloss::SchemaError& e) {
                    print_report(f, e.report());
                    status = std::max(status, kInvalid);
                }
            }
            return status;
        }
        if (*listen) {
            auto store = make_store(step_label, journal);
            if (!journal.empty())
                store.replay_journal(journal);
            sigset_t signals;
            sigemptyset(&signals);
            sigaddset(&signals, SIGINT);
            sigaddset(&signals, SIGTERM);
            pthread_sigmask(SIG_BLOCK, &signals, nullptr);
            gloss::eventd::Server server(store);
            server.start(listen_port);
            std::cerr << "listening on 127.0.0.1:" << server.port() << "\n";
            int sig = 0;
            sigwait(&signals, &sig);
            server.stop();
            return kOk;
        }
        if (*last) {
            if (journal.empty()) {
                std::cerr << "query needs --journal\n";
                return kIo;
            }
            auto store = make_store(step_label, "");
            store.replay_journal(journal);
            std::cout << describe(store.query_last(gloss::parse_id_form(query_id)));
            return kOk;
        }
        if (*distill) {
            const auto epsilon = gloss::parse_distance(epsilon_text);
            std::vector<gloss::ObservedTrail> trails;
            for (const auto& m : manifests)
                trails.push_back(gloss::load_observed_trail(gloss::load_manifest(m)));
            std::cout << gloss::format_adjacency(gloss::distill_archetypal(trails, epsilon));
            return kOk;
        }
    } catch (const gloss::SchemaError& e) {
        print_report("input", e.report());
        return kInvalid;
    } catch (const gloss::Error& e) {
        std::cerr << "gloss: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "gloss: " << e.what() << "\n";
        return kIo;
    }
    return kOk;
}
