#include "cgso/instance_io.hpp"

#include <fstream>
#include <stdexcept>
#include <vector>

#include <nlohmann/json.hpp>

#include "cgso/objectives.hpp"

namespace cgso {

namespace {

using nlohmann::json;

json triplets_of_sparse(const SparseMatrix& A) {
  json out = json::array();
  for (int k = 0; k < A.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(A, k); it; ++it) {
      out.push_back({it.row(), it.col(), it.value()});
    }
  }
  return out;
}

json triplets_of_dense(const Matrix& A) {
  json out = json::array();
  for (Index i = 0; i < A.rows(); ++i) {
    for (Index j = 0; j < A.cols(); ++j) {
      if (A(i, j) != 0.0) out.push_back({i, j, A(i, j)});
    }
  }
  return out;
}

json array_of(const Vector& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Vector vector_of(const json& arr) {
  Vector v(arr.size());
  Index i = 0;
  for (const auto& e : arr) v(i++) = e.get<double>();
  return v;
}

SparseMatrix sparse_of(const json& arr, Index rows, Index cols) {
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(arr.size());
  for (const auto& t : arr) {
    entries.emplace_back(t.at(0).get<Index>(), t.at(1).get<Index>(),
                         t.at(2).get<double>());
  }
  SparseMatrix A(rows, cols);
  A.setFromTriplets(entries.begin(), entries.end());
  A.makeCompressed();
  return A;
}

Matrix dense_of(const json& arr, Index rows, Index cols) {
  Matrix A = Matrix::Zero(rows, cols);
  for (const auto& t : arr) {
    A(t.at(0).get<Index>(), t.at(1).get<Index>()) = t.at(2).get<double>();
  }
  return A;
}

} // namespace

void save_instance(const std::string& path, const GeneratedInstance& inst) {
  const InstanceSpec& spec = inst.spec;
  json doc;
  doc["family"] = family_name(spec.family);
  doc["m"] = spec.m;
  doc["n"] = spec.n;
  doc["d"] = spec.degree;
  doc["m_f"] = spec.c_scale;
  doc["ds"] = spec.density;
  doc["seed"] = spec.seed;
  doc["epsilon"] = spec.epsilon;
  if (!spec.label.empty()) doc["label"] = spec.label;
  doc["x0"] = array_of(inst.start);

  switch (spec.family) {
    case Family::f1: {
      const auto& obj = dynamic_cast<const LogBarrierObjective&>(*inst.objective);
      doc["A"] = triplets_of_sparse(obj.matrix());
      doc["b"] = array_of(obj.offsets());
      break;
    }
    case Family::f3: {
      const auto& obj = dynamic_cast<const EvenPowerObjective&>(*inst.objective);
      doc["A"] = triplets_of_sparse(obj.matrix());
      doc["b"] = array_of(obj.offsets());
      break;
    }
    case Family::f2: {
      const auto& obj = dynamic_cast<const LogDetObjective&>(*inst.objective);
      doc["C"] = triplets_of_dense(obj.shift_matrix());
      doc["c"] = array_of(obj.linear_coeff());
      break;
    }
    case Family::quadratic: {
      const auto& obj = dynamic_cast<const QuadraticObjective&>(*inst.objective);
      doc["A"] = triplets_of_dense(obj.matrix());
      doc["b"] = array_of(obj.rhs());
      if (auto bounds = obj.convexity()) {
        doc["l"] = bounds->lower;
        doc["L"] = bounds->upper;
      }
      break;
    }
  }

  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write instance file: " + path);
  out << doc.dump(2) << "\n";
}

GeneratedInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read instance file: " + path);
  json doc = json::parse(in);

  InstanceSpec spec;
  spec.family = family_from_name(doc.at("family").get<std::string>());
  spec.m = doc.at("m").get<Index>();
  spec.n = doc.at("n").get<Index>();
  spec.degree = doc.at("d").get<int>();
  spec.c_scale = doc.at("m_f").get<double>();
  spec.density = doc.at("ds").get<double>();
  spec.seed = doc.at("seed").get<std::uint64_t>();
  spec.epsilon = doc.at("epsilon").get<double>();
  if (doc.contains("label")) spec.label = doc["label"].get<std::string>();

  GeneratedInstance inst;
  inst.spec = spec;
  inst.start = vector_of(doc.at("x0"));

  switch (spec.family) {
    case Family::f1:
      inst.objective = std::make_shared<LogBarrierObjective>(
          sparse_of(doc.at("A"), spec.m, spec.n), vector_of(doc.at("b")));
      break;
    case Family::f3:
      inst.objective = std::make_shared<EvenPowerObjective>(
          sparse_of(doc.at("A"), spec.m, spec.n), vector_of(doc.at("b")),
          spec.degree);
      break;
    case Family::f2:
      inst.objective = std::make_shared<LogDetObjective>(
          dense_of(doc.at("C"), spec.n, spec.n), vector_of(doc.at("c")));
      break;
    case Family::quadratic: {
      std::optional<ConvexityBounds> bounds;
      if (doc.contains("l") && doc.contains("L")) {
        bounds = ConvexityBounds{doc["l"].get<double>(), doc["L"].get<double>()};
      }
      inst.objective = std::make_shared<QuadraticObjective>(
          dense_of(doc.at("A"), spec.n, spec.n), vector_of(doc.at("b")), bounds);
      break;
    }
  }
  return inst;
}

} // namespace cgso
