function request(options) {
  var retries = options.retries;
  var attempt = function (remaining) {
    wx.request({
      url: options.url,
      success: (res) => {
        options.onDone(null, res.data);
      },
      fail: function (err) {
        if (remaining > 0) {
          attempt(remaining - 1);
        } else {
          options.onDone(err, null);
        }
      }
    });
  };
  attempt(retries);
}
module.exports = { request: request };
