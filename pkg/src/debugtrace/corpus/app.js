App({
  globalData: {
    userInfo: null,
    token: "",
    version: "1.2.3"
  },
  onLaunch: function () {
    var stored = wx.getStorageSync("token");
    if (stored) {
      this.globalData.token = stored;
    } else {
      this.globalData.token = "";
    }
  },
  login: function (callback) {
    var that = this;
    wx.login({
      success: function (res) {
        if (res.code) {
          wx.request({
            url: "https://api.example.com/login",
            data: { code: res.code },
            success: (reply) => {
              that.globalData.token = reply.data.token;
              callback(null, reply.data.token);
            }
          });
        } else {
          callback("no code", null);
        }
      }
    });
  }
});
