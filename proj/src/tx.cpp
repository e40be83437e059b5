#include "babel/tx.hpp"

#include <algorithm>

#include "babel/hash.hpp"

namespace babel {

namespace {

class Writer {
public:
    void u8(std::uint8_t v) { buf_.push_back(v); }

    void u32(std::uint32_t v) {
        for (int shift = 24; shift >= 0; shift -= 8)
            buf_.push_back(static_cast<std::uint8_t>(v >> shift));
    }

    void u64(std::uint64_t v) {
        for (int shift = 56; shift >= 0; shift -= 8)
            buf_.push_back(static_cast<std::uint8_t>(v >> shift));
    }

    void i128(Quantity v) {
        auto u = static_cast<unsigned __int128>(v);
        for (int shift = 120; shift >= 0; shift -= 8)
            buf_.push_back(static_cast<std::uint8_t>(u >> shift));
    }

    void bytes(std::span<const std::uint8_t> b) { buf_.insert(buf_.end(), b.begin(), b.end()); }

    std::vector<std::uint8_t> take() { return std::move(buf_); }

private:
    std::vector<std::uint8_t> buf_;
};

class Reader {
public:
    explicit Reader(std::span<const std::uint8_t> data) : data_(data) {}

    std::uint8_t u8() {
        need(1);
        return data_[pos_++];
    }

    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v = (v << 8) | data_[pos_++];
        return v;
    }

    std::uint64_t u64() {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v = (v << 8) | data_[pos_++];
        return v;
    }

    Quantity i128() {
        need(16);
        unsigned __int128 v = 0;
        for (int i = 0; i < 16; ++i) v = (v << 8) | data_[pos_++];
        return static_cast<Quantity>(v);
    }

    Digest digest() {
        need(32);
        Digest d{};
        std::copy(data_.begin() + pos_, data_.begin() + pos_ + 32, d.begin());
        pos_ += 32;
        return d;
    }

    std::string str(std::size_t n) {
        need(n);
        std::string s(reinterpret_cast<const char*>(data_.data() + pos_), n);
        pos_ += n;
        return s;
    }

    std::size_t& pos() { return pos_; }
    bool exhausted() const { return pos_ == data_.size(); }

private:
    void need(std::size_t n) {
        if (pos_ + n > data_.size()) throw std::invalid_argument("truncated tx encoding");
    }

    std::span<const std::uint8_t> data_;
    std::size_t pos_ = 0;
};

void writeBundle(Writer& w, const Quantities& q) {
    w.u32(static_cast<std::uint32_t>(q.entries().size()));
    for (const auto& [asset, amount] : q.entries()) {  // std::map iterates sorted
        w.bytes(asset.pid);
        w.u8(static_cast<std::uint8_t>(asset.name.size()));
        w.bytes({reinterpret_cast<const std::uint8_t*>(asset.name.data()), asset.name.size()});
        w.i128(amount);
    }
}

Quantities readBundle(Reader& r) {
    std::uint32_t n = r.u32();
    Quantities::Map entries;
    for (std::uint32_t i = 0; i < n; ++i) {
        AssetId asset;
        asset.pid = r.digest();
        asset.name = r.str(r.u8());
        entries[asset] = r.i128();
    }
    return Quantities(std::move(entries));
}

constexpr std::uint8_t kTxTag = 0x54;

std::vector<std::uint8_t> encodeTxImpl(const Tx& t, bool withSigs) {
    Writer w;
    w.u8(kTxTag);
    w.u32(static_cast<std::uint32_t>(t.inputs.size()));
    for (const auto& in : t.inputs) {
        w.bytes(in.outputRef.id);
        w.u32(in.outputRef.index);
        w.bytes(in.key);
    }
    w.u32(static_cast<std::uint32_t>(t.outputs.size()));
    for (const auto& out : t.outputs) {
        w.bytes(out.addr);
        writeBundle(w, out.value);
    }
    w.u64(t.validityInterval.lo);
    w.u64(t.validityInterval.hi);
    writeBundle(w, t.forge);
    w.u32(static_cast<std::uint32_t>(t.scripts.size()));
    for (const auto& s : t.scripts) w.bytes(encodePolicy(s));
    if (withSigs) {
        w.u32(static_cast<std::uint32_t>(t.sigs.size()));
        for (const auto& sig : t.sigs) w.bytes(sig);
    } else {
        w.u32(0);
    }
    return w.take();
}

}  // namespace

void Tx::normalize() {
    std::sort(inputs.begin(), inputs.end());
    inputs.erase(std::unique(inputs.begin(), inputs.end()), inputs.end());
    std::sort(scripts.begin(), scripts.end());
    scripts.erase(std::unique(scripts.begin(), scripts.end()), scripts.end());
    std::sort(sigs.begin(), sigs.end());
    sigs.erase(std::unique(sigs.begin(), sigs.end()), sigs.end());
}

bool Tx::operator==(const Tx& rhs) const {
    return inputs == rhs.inputs && outputs == rhs.outputs &&
           validityInterval == rhs.validityInterval && forge == rhs.forge &&
           std::equal(scripts.begin(), scripts.end(), rhs.scripts.begin(), rhs.scripts.end(),
                      [](const PolicyScript& a, const PolicyScript& b) { return a == b; }) &&
           scripts.size() == rhs.scripts.size() && sigs == rhs.sigs;
}

std::vector<std::uint8_t> encodeTx(const Tx& t) { return encodeTxImpl(t, true); }

Tx decodeTx(std::span<const std::uint8_t> data) {
    Reader r(data);
    if (r.u8() != kTxTag) throw std::invalid_argument("bad tx tag");
    Tx t;
    std::uint32_t nIn = r.u32();
    for (std::uint32_t i = 0; i < nIn; ++i) {
        Input in;
        in.outputRef.id = r.digest();
        in.outputRef.index = r.u32();
        in.key = r.digest();
        t.inputs.push_back(in);
    }
    std::uint32_t nOut = r.u32();
    for (std::uint32_t i = 0; i < nOut; ++i) {
        Output o;
        o.addr = r.digest();
        o.value = readBundle(r);
        t.outputs.push_back(std::move(o));
    }
    t.validityInterval.lo = r.u64();
    t.validityInterval.hi = r.u64();
    t.forge = readBundle(r);
    std::uint32_t nScripts = r.u32();
    for (std::uint32_t i = 0; i < nScripts; ++i) t.scripts.push_back(decodePolicy(data, r.pos()));
    std::uint32_t nSigs = r.u32();
    for (std::uint32_t i = 0; i < nSigs; ++i) t.sigs.push_back(r.digest());
    if (!r.exhausted()) throw std::invalid_argument("trailing bytes in tx encoding");
    t.normalize();
    return t;
}

TxId txId(const Tx& t) { return sha256(encodeTxImpl(t, false)); }

void signTx(Tx& t, const std::vector<PubKey>& keys) {
    TxId id = txId(t);
    for (const auto& k : keys) t.sigs.push_back(sign(k, id));
    std::sort(t.sigs.begin(), t.sigs.end());
    t.sigs.erase(std::unique(t.sigs.begin(), t.sigs.end()), t.sigs.end());
}

}  // namespace babel
