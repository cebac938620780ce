#include "untangle/csvio.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace untangle {

std::string format_double(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
    return std::string(buf, end);
}

void write_labeled_csv(const LabeledDataset& d, const std::string& path) {
    d.validate();
    if (d.classes.empty()) throw std::invalid_argument("write_labeled_csv: empty dataset");
    const std::size_t n = d.dim();
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_labeled_csv: cannot open " + path);
    out << "label";
    for (std::size_t i = 1; i <= n; ++i) out << ",x" << i;
    out << "\n";
    for (const LabeledClass& c : d.classes)
        for (const Vec& p : c.cloud.points) {
            out << c.label;
            for (double v : p) out << ',' << format_double(v);
            out << "\n";
        }
    if (!out) throw std::runtime_error("write_labeled_csv: write failed for " + path);
}

LabeledDataset read_labeled_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_labeled_csv: cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("read_labeled_csv: empty file");
    if (line.rfind("label", 0) != 0)
        throw std::runtime_error("read_labeled_csv: missing 'label,...' header");

    std::size_t n = 0;
    for (char ch : line)
        if (ch == ',') ++n;
    if (n == 0) throw std::runtime_error("read_labeled_csv: no coordinate columns");

    std::vector<int> order;
    std::map<int, std::vector<Vec>> groups;
    std::size_t lineNo = 1;
    while (std::getline(in, line)) {
        ++lineNo;
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string cell;
        if (!std::getline(row, cell, ','))
            throw std::runtime_error("read_labeled_csv: bad row at line " + std::to_string(lineNo));
        int label = 0;
        try {
            label = std::stoi(cell);
        } catch (const std::exception&) {
            throw std::runtime_error("read_labeled_csv: bad label at line " + std::to_string(lineNo));
        }
        Vec p;
        p.reserve(n);
        while (std::getline(row, cell, ',')) {
            char* tail = nullptr;
            double v = std::strtod(cell.c_str(), &tail);
            if (tail == cell.c_str() || *tail != '\0')
                throw std::runtime_error("read_labeled_csv: bad number at line " +
                                         std::to_string(lineNo));
            p.push_back(v);
        }
        if (p.size() != n)
            throw std::runtime_error("read_labeled_csv: wrong column count at line " +
                                     std::to_string(lineNo));
        if (!groups.count(label)) order.push_back(label);
        groups[label].push_back(std::move(p));
    }
    if (order.empty()) throw std::runtime_error("read_labeled_csv: no data rows");

    LabeledDataset d;
    for (int label : order) {
        LabeledClass c;
        c.label = label;
        c.cloud = PointCloud(std::move(groups[label]), 0.0);
        d.classes.push_back(std::move(c));
    }
    return d;
}

}  // namespace untangle
